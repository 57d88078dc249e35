//! Built-in link profiles and the scenario file format.
//!
//! Scenario files are line-oriented UTF-8 text: `[profile <name>]` and
//! `[sweep <name>]` sections with `key = value` pairs, `#` comments, and
//! unit-suffixed keys so a GHz value can never be mistaken for Hz. Unknown
//! keys are rejected outright.

use std::collections::HashMap;

use crate::channel::{GainModel, LinkProfile};
use crate::error::{Error, Result};
use crate::quantities::{Decibel, Frequency, PowerWatts};
use crate::sweep::{Denominator, SweepSpec, SweptParameter};

/// RadCom at 76 GHz, the bold column of the published parameter table.
/// Transmit power is not part of that table; 1 W is the value the oracle
/// back-solves from the d=1 m capacity.
pub fn builtin_radcom() -> LinkProfile {
    LinkProfile {
        name: "radcom".to_string(),
        g_t: Decibel::new(10.0).unwrap(),
        g_r: Decibel::new(10.0).unwrap(),
        f_min: Frequency::hz(76e9).unwrap(),
        bandwidth: 1e9,
        n_sc: 3276,
        noise_figure: Decibel::new(8.0).unwrap(),
        duty_cycle: 1.0,
        tx_power: PowerWatts::watts(1.0).unwrap(),
        temperature: 290.0,
        gain_model: GainModel::PaperTypeset,
        signal_speed: 3e8,
    }
}

/// 802.11bd in the unlicensed 60 GHz band.
pub fn builtin_wifi_bd() -> LinkProfile {
    LinkProfile {
        name: "wifi_bd".to_string(),
        g_t: Decibel::new(12.5).unwrap(),
        g_r: Decibel::new(12.5).unwrap(),
        f_min: Frequency::hz(60e9).unwrap(),
        bandwidth: 1.28e9,
        n_sc: 3276,
        noise_figure: Decibel::new(7.5).unwrap(),
        duty_cycle: 1.0,
        tx_power: PowerWatts::watts(1.0).unwrap(),
        temperature: 290.0,
        gain_model: GainModel::PaperTypeset,
        signal_speed: 3e8,
    }
}

/// Resolve a built-in profile by name.
pub fn builtin(name: &str) -> Option<LinkProfile> {
    match name {
        "radcom" => Some(builtin_radcom()),
        "wifi_bd" => Some(builtin_wifi_bd()),
        _ => None,
    }
}

/// Output hints from a scenario's optional `[output]` section.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    pub path: Option<String>,
    pub format: Option<String>,
}

/// A parsed and validated scenario: profiles, sweeps, output hints.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScenarioFile {
    pub profiles: Vec<LinkProfile>,
    pub sweeps: Vec<SweepSpec>,
    pub output: Option<OutputSpec>,
}

impl ScenarioFile {
    /// Look up a profile by name, falling back to the built-ins.
    pub fn resolve(&self, name: &str) -> Result<LinkProfile> {
        if let Some(p) = self.profiles.iter().find(|p| p.name == name) {
            return Ok(p.clone());
        }
        builtin(name).ok_or_else(|| Error::UnknownProfile(name.to_string()))
    }
}

fn parse_f64(line: usize, key: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>().map_err(|_| Error::Syntax {
        line,
        msg: format!("`{key}` expects a number, got `{raw}`"),
    })
}

fn parse_list(line: usize, key: &str, raw: &str) -> Result<Vec<f64>> {
    raw.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_f64(line, key, s))
        .collect()
}

enum Section {
    Profile(LinkProfile),
    Sweep(SweepSpec),
    Output(OutputSpec),
}

/// Parse scenario text. Strict: unknown keys and invariant violations are
/// errors, each in its own category.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    let mut scenario = ScenarioFile::default();
    let mut current: Option<Section> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }

        if line.starts_with('[') {
            if !line.ends_with(']') {
                return Err(Error::Syntax {
                    line: line_no,
                    msg: "unterminated section header".to_string(),
                });
            }
            flush(&mut scenario, current.take())?;
            let header = line[1..line.len() - 1].trim();
            let (kind, name) = match header.split_once(char::is_whitespace) {
                Some((k, n)) => (k, n.trim()),
                None => (header, ""),
            };
            current = Some(match kind {
                "profile" if !name.is_empty() => {
                    let mut p = builtin_radcom();
                    p.name = name.to_string();
                    Section::Profile(p)
                }
                "sweep" if !name.is_empty() => Section::Sweep(SweepSpec {
                    name: name.to_string(),
                    base_profile: "radcom".to_string(),
                    parameter: SweptParameter::Distance,
                    grid: Vec::new(),
                    distances: vec![1.0, 50.0, 200.0],
                    denominator: Denominator::Second,
                }),
                "output" if name.is_empty() => Section::Output(OutputSpec::default()),
                _ => {
                    return Err(Error::Syntax {
                        line: line_no,
                        msg: format!("unrecognized section `[{header}]`"),
                    })
                }
            });
            continue;
        }

        let (key, value) = line.split_once('=').ok_or_else(|| Error::Syntax {
            line: line_no,
            msg: "expected `key = value`".to_string(),
        })?;
        let key = key.trim();
        let value = value.trim();

        match current.as_mut() {
            None => {
                return Err(Error::Syntax {
                    line: line_no,
                    msg: "key outside any section".to_string(),
                })
            }
            Some(Section::Profile(p)) => apply_profile_key(p, line_no, key, value)?,
            Some(Section::Sweep(s)) => apply_sweep_key(s, line_no, key, value)?,
            Some(Section::Output(o)) => match key {
                "path" => o.path = Some(value.to_string()),
                "format" => o.format = Some(value.to_string()),
                _ => {
                    return Err(Error::UnknownKey {
                        line: line_no,
                        key: key.to_string(),
                    })
                }
            },
        }
    }
    flush(&mut scenario, current.take())?;

    // every sweep must reference a resolvable profile
    let names: HashMap<&str, ()> = scenario
        .profiles
        .iter()
        .map(|p| (p.name.as_str(), ()))
        .collect();
    for sweep in &scenario.sweeps {
        if !names.contains_key(sweep.base_profile.as_str())
            && builtin(&sweep.base_profile).is_none()
        {
            return Err(Error::UnknownProfile(sweep.base_profile.clone()));
        }
        sweep.validate()?;
    }
    Ok(scenario)
}

fn flush(scenario: &mut ScenarioFile, section: Option<Section>) -> Result<()> {
    match section {
        Some(Section::Profile(p)) => {
            p.validate()?;
            scenario.profiles.push(p);
        }
        Some(Section::Sweep(s)) => scenario.sweeps.push(s),
        Some(Section::Output(o)) => scenario.output = Some(o),
        None => {}
    }
    Ok(())
}

fn apply_profile_key(p: &mut LinkProfile, line: usize, key: &str, value: &str) -> Result<()> {
    match key {
        "base" => {
            let name = std::mem::take(&mut p.name);
            *p = builtin(value).ok_or_else(|| Error::UnknownProfile(value.to_string()))?;
            p.name = name;
        }
        "g_t_db" => p.g_t = Decibel::new(parse_f64(line, key, value)?)?,
        "g_r_db" => p.g_r = Decibel::new(parse_f64(line, key, value)?)?,
        "f_min_hz" => p.f_min = Frequency::hz(parse_f64(line, key, value)?)?,
        "bw_hz" => p.bandwidth = parse_f64(line, key, value)?,
        "n_sc" => {
            p.n_sc = value.parse::<u64>().map_err(|_| Error::Syntax {
                line,
                msg: format!("`n_sc` expects a positive integer, got `{value}`"),
            })?
        }
        "noise_figure_db" => p.noise_figure = Decibel::new(parse_f64(line, key, value)?)?,
        "duty_cycle" => {
            let v = parse_f64(line, key, value)?;
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::invariant("duty_cycle", "must lie in [0, 1]"));
            }
            p.duty_cycle = v;
        }
        "tx_power_w" => p.tx_power = PowerWatts::watts(parse_f64(line, key, value)?)?,
        "temperature_k" => p.temperature = parse_f64(line, key, value)?,
        "signal_speed_mps" => p.signal_speed = parse_f64(line, key, value)?,
        "gain_model" => {
            p.gain_model = match value {
                "paper_typeset" => GainModel::PaperTypeset,
                "standard_friis" => GainModel::StandardFriis,
                _ => {
                    return Err(Error::invariant(
                        "gain_model",
                        format!("expected `paper_typeset` or `standard_friis`, got `{value}`"),
                    ))
                }
            }
        }
        _ => {
            return Err(Error::UnknownKey {
                line,
                key: key.to_string(),
            })
        }
    }
    Ok(())
}

fn apply_sweep_key(s: &mut SweepSpec, line: usize, key: &str, value: &str) -> Result<()> {
    match key {
        "profile" => s.base_profile = value.to_string(),
        "parameter" => {
            s.parameter = SweptParameter::parse(value).ok_or_else(|| {
                Error::invariant("parameter", format!("unknown swept parameter `{value}`"))
            })?
        }
        "grid" => s.grid = parse_list(line, key, value)?,
        "distances" => s.distances = parse_list(line, key, value)?,
        "denominator" => {
            s.denominator = match value {
                "first" => Denominator::First,
                "second" => Denominator::Second,
                _ => {
                    return Err(Error::invariant(
                        "denominator",
                        format!("expected `first` or `second`, got `{value}`"),
                    ))
                }
            }
        }
        _ => {
            return Err(Error::UnknownKey {
                line,
                key: key.to_string(),
            })
        }
    }
    Ok(())
}

fn fmt_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Serialize a scenario back to text. `parse_scenario(serialize_scenario(s))`
/// reproduces `s` exactly; floats use the shortest round-trip representation.
pub fn serialize_scenario(s: &ScenarioFile) -> String {
    let mut out = String::new();
    for p in &s.profiles {
        out.push_str(&format!("[profile {}]\n", p.name));
        out.push_str(&format!("g_t_db = {}\n", p.g_t.value()));
        out.push_str(&format!("g_r_db = {}\n", p.g_r.value()));
        out.push_str(&format!("f_min_hz = {}\n", p.f_min.value()));
        out.push_str(&format!("bw_hz = {}\n", p.bandwidth));
        out.push_str(&format!("n_sc = {}\n", p.n_sc));
        out.push_str(&format!("noise_figure_db = {}\n", p.noise_figure.value()));
        out.push_str(&format!("duty_cycle = {}\n", p.duty_cycle));
        out.push_str(&format!("tx_power_w = {}\n", p.tx_power.value()));
        out.push_str(&format!("temperature_k = {}\n", p.temperature));
        out.push_str(&format!("signal_speed_mps = {}\n", p.signal_speed));
        let gm = match p.gain_model {
            GainModel::PaperTypeset => "paper_typeset",
            GainModel::StandardFriis => "standard_friis",
        };
        out.push_str(&format!("gain_model = {gm}\n\n"));
    }
    for sw in &s.sweeps {
        out.push_str(&format!("[sweep {}]\n", sw.name));
        out.push_str(&format!("profile = {}\n", sw.base_profile));
        out.push_str(&format!("parameter = {}\n", sw.parameter.key()));
        out.push_str(&format!("grid = {}\n", fmt_list(&sw.grid)));
        out.push_str(&format!("distances = {}\n", fmt_list(&sw.distances)));
        let den = match sw.denominator {
            Denominator::First => "first",
            Denominator::Second => "second",
        };
        out.push_str(&format!("denominator = {den}\n\n"));
    }
    if let Some(o) = &s.output {
        out.push_str("[output]\n");
        if let Some(p) = &o.path {
            out.push_str(&format!("path = {p}\n"));
        }
        if let Some(f) = &o.format {
            out.push_str(&format!("format = {f}\n"));
        }
    }
    out
}
