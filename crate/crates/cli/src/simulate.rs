use std::fs;

use clap::ValueEnum;
use ncworlds::discrete::{
    discrete_b_closed, discrete_e, discrete_partial_checks, e_route_agreement, format_f64, generate_walk,
    numeric_theorem_residuals, random_uniform, JVector, TheoremResiduals, TimeSeries, THRESHOLD,
};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::output::{json_f64, pass_fail, to_json, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// Include the E and B sample tracks.
    EbFields,
}

pub enum Source {
    File(String),
    Walk { seed: u64, length: usize, k: BigRational, tau: BigRational },
    Uniform { seed: u64, length: usize, tau: BigRational },
}

impl Source {
    fn describe(&self) -> String {
        match self {
            Source::File(p) => format!("file {p}"),
            Source::Walk { seed, length, k, tau } => format!("walk seed={seed} length={length} k={k} tau={tau}"),
            Source::Uniform { seed, length, tau } => format!("uniform seed={seed} length={length} tau={tau}"),
        }
    }

    fn load(&self) -> Result<TimeSeries<f64>, String> {
        let series = match self {
            Source::File(p) => {
                let text = fs::read_to_string(p).map_err(|e| format!("cannot read {p}: {e}"))?;
                TimeSeries::from_json(&text)
            }
            Source::Walk { seed, length, k, tau } => generate_walk(*seed, *length, k, tau, 3),
            Source::Uniform { seed, length, tau } => {
                random_uniform(&mut ChaCha8Rng::seed_from_u64(*seed), *length, 3, tau)
            }
        };
        series.map_err(|e| e.to_string())
    }
}

pub struct Simulation {
    source: String,
    residuals: TheoremResiduals,
    route_diff: f64,
    route_scale: f64,
    partial_residual: f64,
    partial_scale: f64,
    fields: Option<(JVector<f64>, JVector<f64>)>,
}

impl Simulation {
    fn route_ok(&self) -> bool {
        self.route_diff <= 1e-12 * self.route_scale
    }

    fn partial_ok(&self) -> bool {
        self.partial_residual <= THRESHOLD * self.partial_scale.max(1.0)
    }

    pub fn passed(&self) -> bool {
        self.residuals.passed() && self.route_ok() && self.partial_ok()
    }
}

pub fn run(source: &Source, emit: Option<Emit>) -> Result<Simulation, String> {
    let x = source.load()?;
    let residuals = numeric_theorem_residuals(&x).map_err(|e| e.to_string())?;
    let route = e_route_agreement(&x).map_err(|e| e.to_string())?;
    let f = TimeSeries::from_components(x.tau().clone(), &[x.component(1)]).map_err(|e| e.to_string())?;
    let partial = discrete_partial_checks(&f, &x).map_err(|e| e.to_string())?;
    let fields = match emit {
        Some(Emit::EbFields) => {
            Some((discrete_e(&x).map_err(|e| e.to_string())?, discrete_b_closed(&x).map_err(|e| e.to_string())?))
        }
        None => None,
    };
    Ok(Simulation {
        source: source.describe(),
        residuals,
        route_diff: route.max_abs_diff,
        route_scale: route.scale,
        partial_residual: partial.max_residual(),
        partial_scale: partial.scale,
        fields,
    })
}

/// `(field, component, j_power, samples)` rows for the E and B tracks.
fn field_rows(sim: &Simulation) -> Vec<(String, u32, &[f64])> {
    let Some((e, b)) = &sim.fields else { return Vec::new() };
    let mut rows = Vec::new();
    for (name, v) in [("B", b), ("E", e)] {
        for (i, comp) in v.iter().enumerate() {
            for (p, s) in comp.terms() {
                rows.push((format!("{name}{}", i + 1), *p, s.values()));
            }
        }
    }
    rows
}

#[derive(Serialize)]
struct JsonPower {
    j_power: u32,
    max_abs: Box<RawValue>,
    track: Vec<Box<RawValue>>,
}

#[derive(Serialize)]
struct JsonEquation {
    equation: &'static str,
    passed: bool,
    max_abs: Box<RawValue>,
    scale: Box<RawValue>,
    powers: Vec<JsonPower>,
}

#[derive(Serialize)]
struct JsonField {
    field: String,
    j_power: u32,
    samples: Vec<Box<RawValue>>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'static str,
    source: &'a str,
    window: usize,
    threshold: Box<RawValue>,
    passed: bool,
    equations: Vec<JsonEquation>,
    e_route_max_diff: Box<RawValue>,
    partial_max_residual: Box<RawValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fields: Option<Vec<JsonField>>,
}

pub fn render(sim: &Simulation, format: Format) -> String {
    let exact = sim.residuals.exact;
    match format {
        Format::Csv => {
            let mut s = sim.residuals.to_csv();
            if sim.fields.is_some() {
                s.push_str("\nfield,j_power,t,value\n");
                for (name, p, vals) in field_rows(sim) {
                    for (t, v) in vals.iter().enumerate() {
                        s.push_str(&format!("{name},{p},{t},{}\n", format_f64(*v)));
                    }
                }
            }
            s
        }
        Format::Json => {
            let equations = sim
                .residuals
                .equations
                .iter()
                .map(|eq| JsonEquation {
                    equation: eq.law.name(),
                    passed: eq.passed(exact),
                    max_abs: json_f64(eq.max_abs()),
                    scale: json_f64(eq.scale),
                    powers: eq
                        .powers
                        .iter()
                        .map(|p| JsonPower {
                            j_power: p.j_power,
                            max_abs: json_f64(p.max_abs),
                            track: p.track.iter().map(|v| json_f64(*v)).collect(),
                        })
                        .collect(),
                })
                .collect();
            let fields = sim.fields.as_ref().map(|_| {
                field_rows(sim)
                    .into_iter()
                    .map(|(field, j_power, vals)| JsonField {
                        field,
                        j_power,
                        samples: vals.iter().map(|v| json_f64(*v)).collect(),
                    })
                    .collect()
            });
            to_json(&JsonReport {
                command: "simulate",
                source: &sim.source,
                window: sim.residuals.window,
                threshold: json_f64(THRESHOLD),
                passed: sim.passed(),
                equations,
                e_route_max_diff: json_f64(sim.route_diff),
                partial_max_residual: json_f64(sim.partial_residual),
                fields,
            })
        }
        Format::Human => {
            let mut s = format!("source: {}\nwindow: {} samples\n", sim.source, sim.residuals.window);
            s.push_str(&format!("{:<14} {:<6} {:>24} {:>24}\n", "equation", "result", "max |residual|", "scale"));
            for eq in &sim.residuals.equations {
                s.push_str(&format!(
                    "{:<14} {:<6} {:>24} {:>24}\n",
                    eq.law.name(),
                    pass_fail(eq.passed(exact)),
                    format_f64(eq.max_abs()),
                    format_f64(eq.scale)
                ));
            }
            s.push_str(&format!(
                "{:<14} {:<6} {:>24} {:>24}\n",
                "E-routes",
                pass_fail(sim.route_ok()),
                format_f64(sim.route_diff),
                format_f64(sim.route_scale)
            ));
            s.push_str(&format!(
                "{:<14} {:<6} {:>24} {:>24}\n",
                "partials",
                pass_fail(sim.partial_ok()),
                format_f64(sim.partial_residual),
                format_f64(sim.partial_scale)
            ));
            for (name, p, vals) in field_rows(sim) {
                let joined: Vec<String> = vals.iter().map(|v| format_f64(*v)).collect();
                s.push_str(&format!("{name} J^{p}: {}\n", joined.join(" ")));
            }
            s.push_str(if sim.passed() { "all residuals within threshold\n" } else { "residual threshold exceeded\n" });
            s
        }
    }
}
