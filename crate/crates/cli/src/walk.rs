use std::fs;

use ncworlds::discrete::{brownian_commutator, diffusion_track, generate_walk, JElement, Surd, TimeSeries, Value};
use num_rational::BigRational;
use serde::Serialize;

use crate::output::{pass_fail, to_json, Format};

pub enum WalkSource {
    File(String),
    Generated { seed: u64, length: usize, k: BigRational, tau: BigRational, dim: usize },
}

#[derive(Serialize)]
pub struct ComponentTrack {
    pub component: usize,
    /// `[X_i, Ẋ_i]` equals `J (X′ − X)²/τ` exactly.
    pub commutator_matches: bool,
    pub constant: bool,
    /// The common value when the track is constant.
    pub k_hat: Option<String>,
    pub track: Vec<String>,
}

#[derive(Serialize)]
pub struct WalkReport {
    command: &'static str,
    source: String,
    tau: String,
    length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_k: Option<String>,
    passed: bool,
    components: Vec<ComponentTrack>,
}

fn load(source: &WalkSource) -> Result<(TimeSeries<Surd>, String, Option<BigRational>), String> {
    match source {
        WalkSource::File(p) => {
            let text = fs::read_to_string(p).map_err(|e| format!("cannot read {p}: {e}"))?;
            let x = TimeSeries::<BigRational>::from_json(&text).map_err(|e| e.to_string())?;
            Ok((x.map(|v| Surd::rational(v.clone())), format!("file {p}"), None))
        }
        WalkSource::Generated { seed, length, k, tau, dim } => {
            let x = generate_walk(*seed, *length, k, tau, *dim).map_err(|e| e.to_string())?;
            Ok((x, format!("walk seed={seed} length={length} k={k} tau={tau} dim={dim}"), Some(k.clone())))
        }
    }
}

pub fn run(source: &WalkSource) -> Result<WalkReport, String> {
    let (x, describe, expected) = load(source)?;
    let comm = brownian_commutator(&x).map_err(|e| e.to_string())?;
    let mut components = Vec::with_capacity(x.dim());
    for (i, c) in comm.iter().enumerate() {
        let track = diffusion_track(&x, i + 1).map_err(|e| e.to_string())?;
        let matches = c.sub(&JElement::term(1, track.clone())).is_zero() && c.powers().eq([1]);
        let first = &track.values()[0];
        let constant = track.values().iter().all(|v| v == first);
        components.push(ComponentTrack {
            component: i + 1,
            commutator_matches: matches,
            constant,
            k_hat: constant.then(|| first.to_string()),
            track: track.values().iter().map(ToString::to_string).collect(),
        });
    }
    let k_surd = expected.as_ref().map(Surd::from_rational);
    let passed = components.iter().all(|c| {
        let equals_k = match &k_surd {
            Some(k) => c.k_hat.as_deref() == Some(k.to_string().as_str()),
            None => true,
        };
        c.commutator_matches && c.constant && equals_k
    });
    Ok(WalkReport {
        command: "walk",
        source: describe,
        tau: x.tau().to_string(),
        length: x.len(),
        expected_k: expected.map(|k| k.to_string()),
        passed,
        components,
    })
}

impl WalkReport {
    pub fn passed(&self) -> bool {
        self.passed
    }
}

const PREVIEW: usize = 8;

pub fn render(r: &WalkReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Csv => {
            let mut s = String::from("component,t,k_hat\n");
            for c in &r.components {
                for (t, v) in c.track.iter().enumerate() {
                    s.push_str(&format!("{},{t},{v}\n", c.component));
                }
            }
            s
        }
        Format::Human => {
            let mut s = format!("source: {}\ntau: {}\nsamples: {}\n", r.source, r.tau, r.length);
            if let Some(k) = &r.expected_k {
                s.push_str(&format!("expected k: {k}\n"));
            }
            for c in &r.components {
                let shown: Vec<&str> = c.track.iter().take(PREVIEW).map(String::as_str).collect();
                let more = if c.track.len() > PREVIEW { " ..." } else { "" };
                let summary = match &c.k_hat {
                    Some(k) => format!("constant k_hat = {k}, [X,Xdot] = J*{k}"),
                    None => "k_hat is not constant".to_owned(),
                };
                s.push_str(&format!(
                    "component {}: {} {summary}; commutator matches J(X'-X)^2/tau: {}\n  k_hat: {}{more}\n",
                    c.component,
                    pass_fail(c.constant && c.commutator_matches),
                    c.commutator_matches,
                    shown.join(" ")
                ));
            }
            s.push_str(if r.passed { "diffusion constant verified exactly\n" } else { "diffusion check failed\n" });
            s
        }
    }
}
