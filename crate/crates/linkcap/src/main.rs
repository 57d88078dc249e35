use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use linkcap::{
    backsolve_tx_power, binned_capacity, builtin_radcom, builtin_wifi_bd, capacity_vs_distance,
    oracle::verify_all_tables_with_samples, parse_scenario, render_fig2_series, render_svg_chart,
    render_table, report, run_sweep, snr, Decibel, Denominator, Error, Format, Frequency,
    GainModel, LinkProfile, PowerWatts, ScenarioFile, SweepSpec, SweptParameter,
};

/// Channel-capacity analysis for mmWave vehicle-to-vehicle links
/// (RadCom at 76-81 GHz and 802.11bd at 60 GHz).
#[derive(Parser)]
#[command(name = "linkcap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::AlignedText,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GainModelArg {
    PaperTypeset,
    StandardFriis,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate channel capacity for one profile at one distance.
    Capacity {
        /// Profile name: a built-in (radcom, wifi_bd) or one from --scenario.
        #[arg(long, default_value = "radcom")]
        profile: String,
        /// Scenario file providing additional profiles.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Link distance in meters.
        #[arg(long, visible_alias = "distance-m")]
        distance: f64,
        #[arg(long)]
        duty_cycle: Option<f64>,
        #[arg(long)]
        noise_figure_db: Option<f64>,
        #[arg(long)]
        f_min_hz: Option<f64>,
        #[arg(long)]
        bw_hz: Option<f64>,
        #[arg(long)]
        n_sc: Option<u64>,
        #[arg(long)]
        tx_power_w: Option<f64>,
        #[arg(long)]
        gain_model: Option<GainModelArg>,
        /// Also report lower/upper bounds and band-edge SNR (on stderr).
        #[arg(long, short)]
        verbose: bool,
    },
    /// Run the sweeps declared in a scenario file.
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        /// Run only the sweep with this name.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        format: Option<FormatArg>,
    },
    /// Re-emit the four published sensitivity tables.
    Reproduce {
        /// III, IV, V, VI, or all.
        #[arg(long, default_value = "all")]
        table: String,
        #[arg(long, default_value = "text")]
        format: FormatArg,
    },
    /// Capacity-vs-distance series for both built-in profiles.
    Fig2 {
        #[arg(long, default_value_t = 1.0)]
        d_min: f64,
        #[arg(long, default_value_t = 200.0)]
        d_max: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        /// Also write a static SVG line chart to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check every published table cell against the independent oracle and
    /// back-solve the implied transmit power.
    Verify {
        /// Midpoint-rule sample count for the oracle integrator.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// List the built-in profiles.
    Profiles,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Syntax { .. }
        | Error::UnknownKey { .. }
        | Error::Invariant { .. }
        | Error::UnknownProfile(_) => 2,
        _ => 1,
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load_scenario(path: &PathBuf) -> Result<ScenarioFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text)
}

#[allow(clippy::too_many_arguments)]
fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Capacity {
            profile,
            scenario,
            distance,
            duty_cycle,
            noise_figure_db,
            f_min_hz,
            bw_hz,
            n_sc,
            tx_power_w,
            gain_model,
            verbose,
        } => {
            let scenario = match scenario {
                Some(path) => load_scenario(&path)?,
                None => ScenarioFile::default(),
            };
            let mut p = scenario.resolve(&profile)?;
            if let Some(v) = duty_cycle {
                p.duty_cycle = v;
            }
            if let Some(v) = noise_figure_db {
                p.noise_figure = Decibel::new(v)?;
            }
            if let Some(v) = f_min_hz {
                p.f_min = Frequency::hz(v)?;
            }
            if let Some(v) = bw_hz {
                p.bandwidth = v;
            }
            if let Some(v) = n_sc {
                p.n_sc = v;
            }
            if let Some(v) = tx_power_w {
                p.tx_power = PowerWatts::watts(v)?;
            }
            if let Some(v) = gain_model {
                p.gain_model = match v {
                    GainModelArg::PaperTypeset => GainModel::PaperTypeset,
                    GainModelArg::StandardFriis => GainModel::StandardFriis,
                };
            }
            p.validate()?;
            let estimate = binned_capacity(&p, distance)?;
            if verbose {
                eprintln!("profile:      {}", p.name);
                eprintln!(
                    "lower bound:  {} Gbps",
                    report::format_4dp(estimate.lower / 1e9)
                );
                eprintln!(
                    "upper bound:  {} Gbps",
                    report::format_4dp(estimate.upper / 1e9)
                );
                eprintln!("bins:         {}", estimate.n_bins_used);
                eprintln!("duty cycle:   {}", estimate.duty_cycle_applied);
                let snr_lo = snr(&p, p.f_min, distance)?;
                let snr_hi = snr(&p, Frequency::hz(p.f_max())?, distance)?;
                eprintln!("snr @ f_min:  {snr_lo:.6e}");
                eprintln!("snr @ f_max:  {snr_hi:.6e}");
            }
            println!("{}", report::format_4dp(estimate.reported / 1e9));
            Ok(ExitCode::SUCCESS)
        }

        Command::Sweep {
            scenario,
            name,
            format,
        } => {
            let sc = load_scenario(&scenario)?;
            let format: Format = format
                .map(Into::into)
                .or_else(|| {
                    sc.output.as_ref().and_then(|o| match o.format.as_deref() {
                        Some("csv") => Some(Format::Csv),
                        Some("text") => Some(Format::AlignedText),
                        _ => None,
                    })
                })
                .unwrap_or(Format::AlignedText);

            let selected: Vec<&SweepSpec> = match &name {
                Some(n) => {
                    let found: Vec<_> = sc.sweeps.iter().filter(|s| &s.name == n).collect();
                    if found.is_empty() {
                        return Err(Error::Domain(format!("no sweep named `{n}` in scenario")));
                    }
                    found
                }
                None => sc.sweeps.iter().collect(),
            };
            if selected.is_empty() {
                return Err(Error::Domain("scenario declares no sweeps".to_string()));
            }

            let mut rendered = String::new();
            for spec in selected {
                let base = sc.resolve(&spec.base_profile)?;
                let result = run_sweep(spec, &base)?;
                let doc = render_table(&result, format)?;
                if format == Format::Csv {
                    rendered.push_str(&format!("# sweep {}\n", spec.name));
                }
                rendered.push_str(&doc.render());
                rendered.push('\n');
            }
            let rendered = rendered.trim_end().to_string() + "\n";
            match sc.output.as_ref().and_then(|o| o.path.clone()) {
                Some(path) => {
                    std::fs::write(&path, &rendered)
                        .map_err(|e| Error::Domain(format!("cannot write {path}: {e}")))?;
                    eprintln!("wrote {path}");
                }
                None => print!("{rendered}"),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Reproduce { table, format } => {
            let tables = match table.to_ascii_uppercase().as_str() {
                "III" | "3" => vec!["III"],
                "IV" | "4" => vec!["IV"],
                "V" | "5" => vec!["V"],
                "VI" | "6" => vec!["VI"],
                "ALL" => vec!["III", "IV", "V", "VI"],
                other => return Ok(usage_error(&format!("unknown table `{other}`"))),
            };
            let format: Format = format.into();
            let mut out = String::new();
            for t in tables {
                let spec = reproduction_spec(t);
                let result = run_sweep(&spec, &builtin_radcom())?;
                let doc = render_table(&result, format)?;
                match format {
                    Format::Csv => out.push_str(&format!("# table {t}\n")),
                    _ => out.push_str(&format!("Table {t}\n")),
                }
                out.push_str(&doc.render());
                out.push('\n');
            }
            print!("{}", out.trim_end_matches('\n'));
            println!();
            Ok(ExitCode::SUCCESS)
        }

        Command::Fig2 {
            d_min,
            d_max,
            step,
            svg,
        } => {
            if !(d_min > 0.0 && d_min < d_max && step > 0.0) {
                return Ok(usage_error(&format!(
                    "bad range: need 0 < d_min < d_max and step > 0, got d_min={d_min} d_max={d_max} step={step}"
                )));
            }
            let mut grid = Vec::new();
            let mut d = d_min;
            while d <= d_max + 1e-9 {
                grid.push(d);
                d += step;
            }
            let radcom = capacity_vs_distance(&builtin_radcom(), &grid)?;
            let wifi = capacity_vs_distance(&builtin_wifi_bd(), &grid)?;
            let doc = render_fig2_series(&radcom, &wifi, Format::Csv)?;
            print!("{}", doc.render());
            if let Some(path) = svg {
                let chart = render_svg_chart(&radcom, &wifi)?;
                std::fs::write(&path, chart)
                    .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
                eprintln!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { samples } => {
            let tolerance = 5e-4;
            let reports = verify_all_tables_with_samples(samples);
            println!("target,engine_gbps,oracle_gbps,relative_error,reference_gbps,status");
            let mut all_pass = true;
            for r in &reports {
                let ok = r.passes(tolerance);
                all_pass &= ok;
                println!(
                    "{},{},{},{:.3e},{},{}",
                    r.target,
                    report::format_4dp(r.engine_value / 1e9),
                    report::format_4dp(r.oracle_value / 1e9),
                    r.relative_error,
                    report::format_4dp(r.reference_value / 1e9),
                    if ok { "PASS" } else { "FAIL" }
                );
            }
            let pt = backsolve_tx_power(&builtin_radcom(), 1.0, 22.2078e9)?;
            let pt_ok = (0.99..=1.01).contains(&pt.value());
            println!(
                "backsolved_tx_power,{:.6},,,1.0000,{}",
                pt.value(),
                if pt_ok { "PASS" } else { "FAIL" }
            );
            if all_pass && pt_ok {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("verification failed");
                Ok(ExitCode::from(3))
            }
        }

        Command::Profiles => {
            for p in [builtin_radcom(), builtin_wifi_bd()] {
                print_profile(&p);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn reproduction_spec(table: &str) -> SweepSpec {
    let (parameter, grid, denominator) = match table {
        "III" => (SweptParameter::FMin, vec![76e9, 81e9], Denominator::First),
        "IV" => (SweptParameter::NSc, vec![100.0, 10_000.0], Denominator::Second),
        "V" => (
            SweptParameter::Bandwidth,
            vec![150e6, 1e9],
            Denominator::Second,
        ),
        "VI" => (
            SweptParameter::NoiseFigure,
            vec![8.0, 10.0],
            Denominator::Second,
        ),
        _ => unreachable!("table names validated by caller"),
    };
    SweepSpec {
        name: format!("table_{table}"),
        base_profile: "radcom".to_string(),
        parameter,
        grid,
        distances: vec![1.0, 50.0, 200.0],
        denominator,
    }
}

fn print_profile(p: &LinkProfile) {
    println!("{}:", p.name);
    println!("  g_t_db           = {}", p.g_t.value());
    println!("  g_r_db           = {}", p.g_r.value());
    println!("  f_min_hz         = {:e}", p.f_min.value());
    println!("  bw_hz            = {:e}", p.bandwidth);
    println!("  n_sc             = {}", p.n_sc);
    println!("  noise_figure_db  = {}", p.noise_figure.value());
    println!("  duty_cycle       = {}", p.duty_cycle);
    println!("  tx_power_w       = {}", p.tx_power.value());
    println!("  temperature_k    = {}", p.temperature);
    println!(
        "  gain_model       = {}",
        match p.gain_model {
            GainModel::PaperTypeset => "paper_typeset",
            GainModel::StandardFriis => "standard_friis",
        }
    );
}
