//! Floating-point Hodge star of a G₂-form, used only as a cross-check of
//! the exact computations.

use crate::exact_algebra::{rational_to_f64, Rational};
use crate::exterior::{monomials, KForm, Mono};

use super::{G2Error, G2Form, DIM7};

/// `g = b/v` and `vol_φ = v·Ω` with `v⁹ = det b`.
#[derive(Clone, Debug)]
pub struct NumericMetric {
    pub v: f64,
    pub g: [[f64; DIM7]; DIM7],
    pub g_inv: [[f64; DIM7]; DIM7],
}

impl NumericMetric {
    pub fn from_g2(g2: &G2Form) -> Self {
        let det = rational_to_f64(&g2.det_b);
        let v = det.signum() * det.abs().powf(1.0 / 9.0);
        let mut g = [[0.0; DIM7]; DIM7];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = rational_to_f64(&g2.b[(i, j)]) / v;
            }
        }
        let g_inv = invert(&g);
        Self { v, g, g_inv }
    }

    /// `det (g⁻¹)_{I,K}` for index sets of equal size.
    fn inverse_minor(&self, rows: Mono, cols: Mono) -> f64 {
        let r: Vec<usize> = rows.indices().collect();
        let c: Vec<usize> = cols.indices().collect();
        let m: Vec<Vec<f64>> = r
            .iter()
            .map(|&i| c.iter().map(|&j| self.g_inv[i - 1][j - 1]).collect())
            .collect();
        det(m)
    }
}

/// Hodge star of `a` with respect to the metric and orientation of `φ`.
pub fn star_numeric(phi: &KForm<Rational>, a: &KForm<f64>) -> Result<KForm<f64>, G2Error> {
    let g2 = G2Form::recognize(phi)?;
    Ok(star_with(&NumericMetric::from_g2(&g2), a))
}

pub fn star_with(metric: &NumericMetric, a: &KForm<f64>) -> KForm<f64> {
    let k = a.grade();
    let mut out = KForm::zero(DIM7, DIM7 - k);
    for i in monomials(DIM7, k) {
        // Raised component α^I = Σ_K det(g⁻¹)_{I,K} α_K.
        let raised: f64 = a.terms().map(|(kk, c)| c * metric.inverse_minor(i, kk)).sum();
        if raised == 0.0 {
            continue;
        }
        let j = i.complement(DIM7);
        let (_, negative) = i.wedge(j).expect("disjoint");
        let sign = if negative { -1.0 } else { 1.0 };
        out.add_term(j, metric.v * sign * raised);
    }
    out
}

fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for col in 0..n {
        let p = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty");
        if m[p][col] == 0.0 {
            return 0.0;
        }
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        d *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    d
}

fn invert(a: &[[f64; DIM7]; DIM7]) -> [[f64; DIM7]; DIM7] {
    let n = DIM7;
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.to_vec();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))
            .expect("non-empty");
        m.swap(p, col);
        let piv = m[col][col];
        for x in m[col].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != 0.0 {
                    for c in 0..2 * n {
                        m[r][c] -= f * m[col][c];
                    }
                }
            }
        }
    }
    let mut out = [[0.0; DIM7]; DIM7];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = m[i][n + j];
        }
    }
    out
}
