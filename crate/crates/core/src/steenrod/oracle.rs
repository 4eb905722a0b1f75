//! An independent cross-check of the derived tables.
//!
//! Polynomials here are plain sets of dense exponent vectors and powers are
//! taken by repeated multiplication, so nothing is shared with the closed
//! form in the parent module or with the ring layer's arithmetic. The
//! classical closed formula `Σ_i ξ_{n-i}^{2^i} ⊗ ξ_i` is checked against the
//! derived table with its tensor slots exchanged.

use std::collections::BTreeSet;

use serde::Serialize;

use super::DualSteenrodPresentation;
use crate::error::Result;
use crate::tensor::TensorElement;

type Dense = Vec<u32>;
type Poly = BTreeSet<Dense>;

fn toggle(p: &mut Poly, m: Dense) {
    if !p.remove(&m) {
        p.insert(m);
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for x in a {
        for y in b {
            toggle(&mut out, x.iter().zip(y).map(|(p, q)| p + q).collect());
        }
    }
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    a.symmetric_difference(b).cloned().collect()
}

/// Series in `x` with polynomial coefficients, indexed by exponent.
fn series_mul(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let len = a.len();
    let mut out = vec![Poly::new(); len];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_empty() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] = poly_add(&out[i + j], &poly_mul(ai, bj));
        }
    }
    out
}

fn unit(vars: usize) -> Dense {
    vec![0; vars]
}

fn var(vars: usize, i: usize) -> Dense {
    let mut d = unit(vars);
    d[i] = 1;
    d
}

/// Dense form of `Δ(ξ_n)` for `n = 1 ..= k`: the coefficient of `x^{2^n}` in
/// `f(g(x))`, where `f = x + Σ u_j x^{2^j}` and `g = x + Σ v_i x^{2^i}`.
/// Variables are `u_1 … u_k, v_1 … v_k`.
pub fn naive_coproduct(k: usize) -> Vec<BTreeSet<Vec<u32>>> {
    let vars = 2 * k;
    let top = 1usize << k;
    let mut g = vec![Poly::new(); top + 1];
    g[1].insert(unit(vars));
    for i in 1..=k {
        g[1 << i].insert(var(vars, k + i - 1));
    }
    // f(g) = g + Σ_j u_j g^{2^j}
    let mut total = g.clone();
    let mut power = g.clone();
    let mut exponent = 1usize;
    for j in 1..=k {
        while exponent < (1 << j) {
            power = series_mul(&power, &g);
            exponent += 1;
        }
        let uj: Poly = [var(vars, j - 1)].into_iter().collect();
        for (n, c) in power.iter().enumerate() {
            total[n] = poly_add(&total[n], &poly_mul(&uj, c));
        }
    }
    (1..=k).map(|n| total[1 << n].clone()).collect()
}

/// The classical formula in dense form, with `ξ_i` on the left as `u_i`.
fn milnor_formula(k: usize, n: usize) -> Poly {
    let vars = 2 * k;
    let mut out = Poly::new();
    for i in 0..=n {
        let mut m = unit(vars);
        if n - i > 0 {
            m[n - i - 1] = 1 << i;
        }
        if i > 0 {
            m[k + i - 1] += 1;
        }
        toggle(&mut out, m);
    }
    out
}

fn dense_of(t: &TensorElement, k: usize, swap: bool) -> Poly {
    let mut out = Poly::new();
    for (l, r) in t.terms() {
        let mut d = unit(2 * k);
        let (a, b) = if swap { (r, l) } else { (l, r) };
        for &(i, e) in a.exponents() {
            d[i] = e;
        }
        for &(i, e) in b.exponents() {
            d[k + i] = e;
        }
        toggle(&mut out, d);
    }
    out
}

fn render(p: &Poly, k: usize) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let names: Vec<String> = (1..=k)
        .map(|i| format!("xi{i}⊗1"))
        .chain((1..=k).map(|i| format!("1⊗xi{i}")))
        .collect();
    p.iter()
        .map(|d| {
            let factors: Vec<String> = d
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { names[i].clone() } else { format!("({})^{e}", names[i]) })
                .collect();
            if factors.is_empty() {
                "1".into()
            } else {
                factors.join("*")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleEntry {
    pub generator: String,
    pub matches_expansion: bool,
    pub matches_classical_transposed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub entries: Vec<OracleEntry>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.matches_expansion && e.matches_classical_transposed)
    }
}

/// Compares a presentation's coproduct table against both oracles.
pub fn compare_tables(p: &DualSteenrodPresentation) -> OracleReport {
    let k = p.generators();
    let naive = naive_coproduct(k);
    let entries = (1..=k)
        .map(|n| {
            let table = dense_of(&p.coproduct()[n - 1], k, false);
            let transposed = dense_of(&p.coproduct()[n - 1], k, true);
            let diff = poly_add(&table, &naive[n - 1]);
            OracleEntry {
                generator: p.generator_name(n).to_string(),
                matches_expansion: diff.is_empty(),
                matches_classical_transposed: transposed == milnor_formula(k, n),
                residual: (!diff.is_empty()).then(|| render(&diff, k)),
            }
        })
        .collect();
    OracleReport { entries }
}

/// Derives the tables for `k` generators and compares them.
pub fn milnor_oracle_compare(k: usize, truncation: Option<u32>) -> Result<OracleReport> {
    Ok(compare_tables(&DualSteenrodPresentation::derive(k, truncation)?))
}
