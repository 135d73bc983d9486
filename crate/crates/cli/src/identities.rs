use ncworlds::emtheorem::{derive_jacobi_correction, EMContext};
use ncworlds::ncalg::{Expression, Scalar};
use ncworlds::veccalc::StructureConstants;
use serde::Serialize;

use crate::output::{to_json, Format};

#[derive(Serialize)]
struct Coefficient {
    i: usize,
    j: usize,
    l: usize,
    r: usize,
    value: String,
}

#[derive(Serialize)]
pub struct Identities {
    command: &'static str,
    structure_constants: String,
    /// `B_k = (1/2) Σ f_ijk [Ẋ_i, Ẋ_j]` holds as a normal-form identity.
    magnetic_is_half_commutator: bool,
    /// The brute-force correction tensor agrees with `Σ_k f_ilk f_jkr`.
    correction_matches_closed_form: bool,
    passed: bool,
    magnetic: Vec<String>,
    electric: Vec<String>,
    jacobi_correction: Vec<Coefficient>,
}

impl Identities {
    pub fn passed(&self) -> bool {
        self.passed
    }
}

pub fn run(f: StructureConstants, tensor: &str) -> Identities {
    let ctx = EMContext::new(f.clone());
    let d = ctx.dim();
    let v = ctx.velocity();
    let half = Scalar::ratio(1, 2);
    let magnetic_is_half_commutator = (1..=d).all(|k| {
        let mut s = Expression::zero();
        for i in 1..=d {
            for j in 1..=d {
                s += &v[i].commutator(&v[j]).scale(&(f.get(i, j, k) * &half));
            }
        }
        s == ctx.magnetic()[k]
    });
    let derived = derive_jacobi_correction(&f);
    let mut jacobi_correction = Vec::new();
    let mut correction_matches_closed_form = true;
    for i in 1..=d {
        for j in 1..=d {
            for l in 1..=d {
                for r in 1..=d {
                    let value = &derived[i - 1][j - 1][l - 1][r - 1];
                    let closed = (1..=d).fold(Scalar::zero(), |s, k| &s + &(f.get(i, l, k) * f.get(j, k, r)));
                    correction_matches_closed_form &= &closed == value;
                    if !value.is_zero() {
                        jacobi_correction.push(Coefficient { i, j, l, r, value: value.to_string() });
                    }
                }
            }
        }
    }
    Identities {
        command: "identities",
        structure_constants: tensor.to_owned(),
        magnetic_is_half_commutator,
        correction_matches_closed_form,
        passed: magnetic_is_half_commutator && correction_matches_closed_form,
        magnetic: ctx.magnetic().components().iter().map(ToString::to_string).collect(),
        electric: ctx.electric().components().iter().map(ToString::to_string).collect(),
        jacobi_correction,
    }
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn render(id: &Identities, format: Format) -> String {
    match format {
        Format::Json => to_json(id),
        Format::Csv => {
            let mut s = String::from("quantity,index,value\n");
            for (k, b) in id.magnetic.iter().enumerate() {
                s.push_str(&format!("B,{},{}\n", k + 1, csv_quote(b)));
            }
            for (k, e) in id.electric.iter().enumerate() {
                s.push_str(&format!("E,{},{}\n", k + 1, csv_quote(e)));
            }
            for c in &id.jacobi_correction {
                s.push_str(&format!("T,{}{}{}{},{}\n", c.i, c.j, c.l, c.r, csv_quote(&c.value)));
            }
            s
        }
        Format::Human => {
            let mut s = format!("structure constants: {}\n\n", id.structure_constants);
            s.push_str("B = Xdot x Xdot\n");
            for (k, b) in id.magnetic.iter().enumerate() {
                s.push_str(&format!("  B{} = {b}\n", k + 1));
            }
            s.push_str(&format!("  B_k = (1/2) sum f_ijk [Xdot_i, Xdot_j]: {}\n\n", id.magnetic_is_half_commutator));
            s.push_str("E = d_t Xdot\n");
            for (k, e) in id.electric.iter().enumerate() {
                s.push_str(&format!("  E{} = {e}\n", k + 1));
            }
            s.push_str("\nA x (B x C) = (A x B) x C + T(A,B,C),  T_r = sum coeff(i,j,l,r) A_i B_j C_l\n");
            for c in &id.jacobi_correction {
                s.push_str(&format!("  coeff({},{},{},{}) = {}\n", c.i, c.j, c.l, c.r, c.value));
            }
            s.push_str(&format!("  coefficients equal sum_k f_ilk f_jkr: {}\n", id.correction_matches_closed_form));
            s.push_str("\ndiscrete model, X' = X(t+1), D = X' - X:\n");
            s.push_str("  Xdot = J D(X)/tau\n");
            s.push_str("  [X, Xdot] = J D(X)^2/tau\n");
            s.push_str("  d_i F = [F, Xdot_i] = Fdot D_i\n");
            s.push_str("  d_t F = J D(F)/tau - J^2 (D' . D) D(F)/tau^2\n");
            s.push_str("  B = J^2 D(X') x D(X)/tau^2\n");
            s.push_str("  E = J^2 D^2(X)/tau^2 - J^3 D(X'') x (D(X') x D(X))/tau^3\n");
            s
        }
    }
}
