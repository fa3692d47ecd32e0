use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::exact_algebra::{fmt_rational, rat, CompiledPoly, Matrix, Poly, Rational};
use crate::exterior::{monomials, FormSubspace, KForm, Mono};
use crate::nilpotent::{LieAlgebra, VectorSpan, DIM};
use crate::report;
use crate::stable_forms::{hitchin_lambda, SixSpace};

use super::{Method, ObstructionCertificate, SearchConfig, Verdict, Witness};

const H_DIM: usize = 6;
const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ThirdData {
    /// Closed 3-forms `z_α` on `h* = ⟨e¹, …, e⁶⟩`.
    pub closed3: Vec<KForm<Rational>>,
    /// Basis of `W ⊂ Λ⁵h*`.
    pub w_basis: Vec<KForm<Rational>>,
    /// Monomials completing `W` to `Λ⁵h*`.
    pub w_complement: Vec<Mono>,
    /// Coordinates (over `z_α`) of a basis of `H`.
    pub h_basis: Vec<Vec<Rational>>,
    /// `λ(Σ b_k h_k)` in the `H`-coordinates `b`.
    pub lambda_h: Poly,
    /// `(c, q)` with `λ|_H = c·q²`, when `λ|_H` has that shape.
    pub square: Option<(Rational, Poly)>,
    pub numeric_min: Option<f64>,
    /// A closed 3-form in `H` with `λ < 0`, and its exact `λ`.
    pub negative: Option<(KForm<Rational>, Rational)>,
    pub seed: u64,
    pub starts: usize,
}

impl ThirdData {
    pub fn to_json(&self) -> Value {
        json!({
            "closed_3forms_on_h": report::forms(&self.closed3),
            "W_basis": report::forms(&self.w_basis),
            "W_complement": self.w_complement.iter().map(|m| format!("e{m}")).collect::<Vec<_>>(),
            "H_basis": self.h_basis.iter().map(|v| report::vector(v)).collect::<Vec<_>>(),
            "lambda_on_H": self.lambda_h.to_string(),
            "lambda_on_H_identically_zero": self.lambda_h.is_zero(),
            "lambda_on_H_square": self.square.as_ref().map(|(c, q)| json!({
                "c": report::rational(c),
                "q": q.to_string(),
            })),
            "numeric_minimum": self.numeric_min.map(|m| format!("{m:.3e}")),
            "negative_witness": self.negative.as_ref().map(|(t, l)| json!({
                "tau": report::form(t),
                "lambda": report::rational(l),
            })),
            "seed": self.seed,
            "starts": self.starts,
        })
    }
}

pub(super) fn config_from_json(w: &Value) -> Option<SearchConfig> {
    Some(SearchConfig {
        seed: w["seed"].as_u64()?,
        starts: w["starts"].as_u64()? as usize,
        ..SearchConfig::default()
    })
}

/// `{z ∈ Λ³h* : dz = 0}` as forms on ℝ⁷.
fn closed_on_h(alg: &LieAlgebra) -> Vec<KForm<Rational>> {
    let inputs = monomials(H_DIM, 3);
    let outputs = monomials(DIM, 4);
    let mut m = Matrix::zeros(outputs.len(), inputs.len());
    for (j, mono) in inputs.iter().enumerate() {
        let d = alg.ce_d(&KForm::monomial(DIM, *mono, rat(1, 1)));
        for (out, c) in d.terms() {
            let row = outputs.binary_search(&out).expect("grade 4");
            m[(row, j)] = c.clone();
        }
    }
    let coords: Vec<KForm<Rational>> = m
        .kernel()
        .iter()
        .map(|v| KForm::from_terms(DIM, 3, inputs.iter().copied().zip(v.iter().cloned())))
        .collect();
    FormSubspace::span(DIM, 3, &coords).basis()
}

/// `span{β_i∧dβ_j + β_j∧dβ_i} + span{z_α∧de^j : j ≤ 6}` with `β` over a
/// basis of `Λ²h*`.
fn w_space(alg: &LieAlgebra, closed3: &[KForm<Rational>]) -> FormSubspace<Rational> {
    let betas: Vec<KForm<Rational>> = monomials(H_DIM, 2)
        .into_iter()
        .map(|m| KForm::monomial(DIM, m, rat(1, 1)))
        .collect();
    let dbetas: Vec<KForm<Rational>> = betas.iter().map(|b| alg.ce_d(b)).collect();
    let mut gens = Vec::new();
    for i in 0..betas.len() {
        for j in i..betas.len() {
            gens.push(betas[i].wedge(&dbetas[j]).add(&betas[j].wedge(&dbetas[i])));
        }
    }
    for z in closed3 {
        for j in 1..=H_DIM {
            gens.push(z.wedge(alg.de(j)));
        }
    }
    FormSubspace::span(DIM, 5, &gens)
}

/// `H = {a : Σ a_α z_α∧de⁷ ∈ W}`.
fn h_space(alg: &LieAlgebra, closed3: &[KForm<Rational>], w: &FormSubspace<Rational>) -> Vec<Vec<Rational>> {
    let m = closed3.len();
    if m == 0 {
        return vec![];
    }
    let mut cols: Vec<Vec<Rational>> = closed3.iter().map(|z| z.wedge(alg.de(7)).to_coords()).collect();
    cols.extend(w.basis().iter().map(KForm::to_coords));
    let rows = cols[0].len();
    let kernel = Matrix::from_cols(&cols, rows).kernel();
    let projected: Vec<Vec<Rational>> = kernel.into_iter().map(|v| v[..m].to_vec()).collect();
    VectorSpan::new(projected)
        .basis()
        .iter()
        .map(|v| v[..m].to_vec())
        .collect()
}

fn combine(closed3: &[KForm<Rational>], h: &[Rational]) -> KForm<Rational> {
    closed3
        .iter()
        .zip(h)
        .fold(KForm::zero(DIM, 3), |acc, (z, c)| acc.add(&z.scale(c)))
}

fn six(form: &KForm<Rational>) -> KForm<Rational> {
    form.with_dim(H_DIM).expect("form on h*")
}

pub fn obstruction3(alg: &LieAlgebra, cfg: &SearchConfig) -> ObstructionCertificate {
    let closed3 = closed_on_h(alg);
    let w = w_space(alg, &closed3);
    let full = monomials(H_DIM, 5).len();
    let mut data = ThirdData {
        closed3: closed3.clone(),
        w_basis: w.basis(),
        w_complement: w
            .complement()
            .into_iter()
            .filter(|m| !m.contains(7))
            .collect(),
        h_basis: vec![],
        lambda_h: Poly::zero(),
        square: None,
        numeric_min: None,
        negative: None,
        seed: cfg.seed,
        starts: cfg.starts,
    };
    let cert = |verdict, data: ThirdData, rationale: String| ObstructionCertificate {
        algebra: alg.name().to_string(),
        method: Method::Third,
        verdict,
        witness: Witness::Third(Box::new(data)),
        candidates_tried: 1,
        rationale,
    };
    if w.dimension() == full {
        return cert(
            Verdict::NotApplicable,
            data,
            "W is all of Λ⁵h*, so H imposes no condition".into(),
        );
    }
    let h_basis = h_space(alg, &closed3, &w);
    let generators: Vec<KForm<Rational>> = h_basis.iter().map(|h| six(&combine(&closed3, h))).collect();
    let generic = generators
        .iter()
        .enumerate()
        .fold(KForm::<Poly>::zero(H_DIM, 3), |acc, (k, g)| {
            acc.add(&g.map(|c| Poly::constant(c.clone()) * Poly::var(k as u16)))
        });
    let space = SixSpace::default();
    data.lambda_h = hitchin_lambda(&generic, &space);
    data.h_basis = h_basis;
    if data.lambda_h.is_zero() {
        let msg = format!("λ vanishes identically on H (dim H = {})", data.h_basis.len());
        return cert(Verdict::Holds, data, msg);
    }
    data.square = data.lambda_h.square_root();
    if let Some((c, q)) = data.square.clone().filter(|(c, _)| *c > Rational::zero()) {
        let msg = if c.is_one() {
            format!("λ on H equals ({q})² ≥ 0")
        } else {
            format!("λ on H equals {}·({q})² ≥ 0", fmt_rational(&c))
        };
        return cert(Verdict::Holds, data, msg);
    }
    let n = data.h_basis.len();
    let compiled = data.lambda_h.compile();
    let (min, arg) = minimize_on_sphere(&compiled, n, cfg.starts, cfg.seed);
    data.numeric_min = Some(min);
    if min >= -TOLERANCE {
        let msg = format!(
            "λ on the unit sphere of H (dim {n}) has numeric minimum {min:.3e} over {} starts",
            cfg.starts
        );
        return cert(Verdict::HoldsNumeric, data, msg);
    }
    let exact = rationalize_negative(&data.lambda_h, &arg);
    let msg = match &exact {
        Some((b, l)) => {
            let tau = combine(
                &closed3,
                &(0..closed3.len())
                    .map(|a| {
                        data.h_basis
                            .iter()
                            .zip(b)
                            .fold(Rational::zero(), |acc, (h, bk)| acc + &h[a] * bk)
                    })
                    .collect::<Vec<_>>(),
            );
            let lam = hitchin_lambda(&six(&tau), &space);
            debug_assert_eq!(&lam, l);
            data.negative = Some((tau, lam));
            format!("a closed τ in H has λ(τ) = {l} < 0")
        }
        None => format!("numeric minimum {min:.3e} < 0 on H"),
    };
    cert(Verdict::NotApplicable, data, msg)
}

/// Projected gradient descent on the unit sphere from seeded random
/// starts; stops early at the first value below `−TOLERANCE`.
fn minimize_on_sphere(f: &CompiledPoly, n: usize, starts: usize, seed: u64) -> (f64, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (f64::INFINITY, vec![0.0; n]);
    let mut grad = vec![0.0; n];
    for _ in 0..starts {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        normalize(&mut x);
        let mut fx = f.eval(&x);
        let mut step = 0.1;
        for _ in 0..400 {
            f.eval_grad(&x, &mut grad);
            let radial: f64 = grad.iter().zip(&x).map(|(g, xi)| g * xi).sum();
            let tangent: Vec<f64> = grad.iter().zip(&x).map(|(g, xi)| g - radial * xi).collect();
            let norm = tangent.iter().map(|t| t * t).sum::<f64>().sqrt();
            if norm < 1e-14 {
                break;
            }
            let mut accepted = false;
            while step > 1e-14 {
                let mut y: Vec<f64> = x.iter().zip(&tangent).map(|(xi, t)| xi - step * t / norm).collect();
                normalize(&mut y);
                let fy = f.eval(&y);
                if fy < fx {
                    x = y;
                    fx = fy;
                    step *= 1.5;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted || fx < -TOLERANCE {
                break;
            }
        }
        if fx < best.0 {
            best = (fx, x);
        }
        if best.0 < -TOLERANCE {
            break;
        }
    }
    best
}

fn normalize(x: &mut [f64]) {
    let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n > 0.0 {
        x.iter_mut().for_each(|v| *v /= n);
    }
}

/// Rounds a numeric minimizer to rationals until `λ` is exactly negative.
fn rationalize_negative(lambda: &Poly, x: &[f64]) -> Option<(Vec<Rational>, Rational)> {
    [10i64, 100, 1000, 10_000, 1_000_000].iter().find_map(|&scale| {
        let b: Vec<Rational> = x
            .iter()
            .map(|v| Rational::new(((v * scale as f64).round() as i64).into(), scale.into()))
            .collect();
        let b = primitive(b);
        let l = lambda.eval(&b);
        (l < Rational::zero()).then_some((b, l))
    })
}

/// The integer vector on the same ray; `λ` is homogeneous, so its sign is
/// unchanged.
fn primitive(b: Vec<Rational>) -> Vec<Rational> {
    let lcm = b.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = b.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return b;
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &gcd)).collect()
}
