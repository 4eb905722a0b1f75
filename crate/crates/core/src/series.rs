//! Truncated power series in one, two or three variables with coefficients
//! in a truncated GF(2) polynomial ring.
//!
//! Every series here is reduced: the constant term is zero, and the type
//! rejects anything else at construction. Truncation is by total degree in
//! the series variables and is applied after every product.
//!
//! Composition follows a single convention throughout the crate:
//! `compose1(f, g)` is `f ∘ g`, that is `f(g(x))`.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::parse::parse_named_poly;
use crate::ring::{same_ring, Ring, RingElement};

/// A truncated reduced power series in `V` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<const V: usize> {
    ring: Ring,
    truncation: u32,
    coeffs: BTreeMap<[u32; V], RingElement>,
}

pub type Series1 = Series<1>;
pub type Series2 = Series<2>;
pub type Series3 = Series<3>;

pub const VARIABLES: [&str; 3] = ["x", "y", "z"];

fn total<const V: usize>(e: &[u32; V]) -> u32 {
    e.iter().sum()
}

/// One entry of the JSON form of a series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub exponent: JsonExponent,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonExponent {
    Single(u32),
    Multi(Vec<u32>),
}

impl<const V: usize> Series<V> {
    pub fn zero(ring: &Ring, truncation: u32) -> Self {
        Series {
            ring: ring.clone(),
            truncation,
            coeffs: BTreeMap::new(),
        }
    }

    /// Sums `coeff · x^exp` over the given terms. Terms above the truncation
    /// are dropped; a nonzero constant term is an error.
    pub fn from_terms(
        ring: &Ring,
        truncation: u32,
        terms: impl IntoIterator<Item = ([u32; V], RingElement)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ring, truncation);
        for (e, c) in terms {
            if !same_ring(c.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if c.is_zero() || total(&e) > truncation {
                continue;
            }
            if total(&e) == 0 {
                return Err(Error::NotReduced);
            }
            out.add_term(e, &c);
        }
        if out.coeffs.keys().any(|e| total(e) == 0) {
            return Err(Error::NotReduced);
        }
        Ok(out)
    }

    pub fn monomial(ring: &Ring, truncation: u32, exponent: [u32; V], coeff: RingElement) -> Result<Self> {
        Self::from_terms(ring, truncation, [(exponent, coeff)])
    }

    /// The coordinate series for variable `k`.
    pub fn variable(ring: &Ring, truncation: u32, k: usize) -> Self {
        let mut e = [0u32; V];
        e[k] = 1;
        Self::monomial(ring, truncation, e, RingElement::one(ring)).expect("reduced")
    }

    fn add_term(&mut self, e: [u32; V], c: &RingElement) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c.clone());
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn coefficient(&self, exponent: &[u32; V]) -> RingElement {
        self.coeffs
            .get(exponent)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(&self.ring))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; V], &RingElement)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest total degree carrying a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(total).min()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Series {
            ring: self.ring.clone(),
            truncation: self.truncation,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| total(e) == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Forgets everything above total degree `m`.
    pub fn truncate(&self, m: u32) -> Self {
        let m = m.min(self.truncation);
        Series {
            ring: self.ring.clone(),
            truncation: m,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| total(e) <= m)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    fn check_compatible<const W: usize>(&self, other: &Series<W>) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn by_degree(&self) -> Vec<(u32, &[u32; V], &RingElement)> {
        let mut v: Vec<_> = self.coeffs.iter().map(|(e, c)| (total(e), e, c)).collect();
        v.sort_by_key(|(d, _, _)| *d);
        v
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.truncation;
        let a = self.by_degree();
        let b = other.by_degree();
        let mut acc: BTreeMap<[u32; V], RingElement> = BTreeMap::new();
        for &(da, ea, ca) in &a {
            for &(db, eb, cb) in &b {
                if da + db > n {
                    break;
                }
                let prod = ca * cb;
                if prod.is_zero() {
                    continue;
                }
                let mut e = *ea;
                for k in 0..V {
                    e[k] += eb[k];
                }
                match acc.get_mut(&e) {
                    Some(c) => c.add_assign_ref(&prod),
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Series {
            ring: self.ring.clone(),
            truncation: n,
            coeffs: acc,
        }
    }

    /// Characteristic-2 squaring: coefficients squared at doubled exponents.
    pub fn frobenius_square(&self) -> Self {
        let mut out = Self::zero(&self.ring, self.truncation);
        for (e, c) in &self.coeffs {
            let d = e.map(|k| 2 * k);
            if total(&d) <= self.truncation {
                out.add_term(d, &c.square());
            }
        }
        out
    }

    /// `self^n` for `n ≥ 1`.
    pub fn pow(&self, n: u32) -> Self {
        assert!(n >= 1, "reduced series have no zeroth power");
        let mut acc: Option<Self> = None;
        let mut sq = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul_unchecked(&sq),
                });
            }
            e >>= 1;
            if e > 0 {
                sq = sq.frobenius_square();
            }
        }
        acc.expect("n >= 1")
    }

    /// Applies a ring map to every coefficient.
    pub fn map_coefficients(&self, h: &RingHom) -> Result<Self> {
        if !same_ring(h.source(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = Self::zero(h.target(), self.truncation);
        for (e, c) in &self.coeffs {
            out.add_term(*e, &h.apply(c)?);
        }
        Ok(out)
    }

    /// Substitutes `args[k]` for variable `k` and truncates.
    pub fn substitute<const W: usize>(&self, args: &[&Series<W>; V]) -> Result<Series<W>> {
        for a in args {
            self.check_compatible(*a)?;
        }
        let n = self.truncation;
        let mut powers: Vec<Vec<Series<W>>> = Vec::with_capacity(V);
        for k in 0..V {
            let max = self.coeffs.keys().map(|e| e[k]).max().unwrap_or(0).min(n);
            let mut pk = Vec::with_capacity(max as usize + 1);
            pk.push(Series::zero(&self.ring, n)); // placeholder for exponent 0
            if max >= 1 {
                pk.push(args[k].clone());
            }
            for p in 2..=max {
                let next = pk[p as usize - 1].mul_unchecked(args[k]);
                pk.push(next);
            }
            powers.push(pk);
        }
        let mut out = Series::<W>::zero(&self.ring, n);
        for (e, c) in &self.coeffs {
            let mut term: Option<Series<W>> = None;
            for k in 0..V {
                if e[k] == 0 {
                    continue;
                }
                let p = &powers[k][e[k] as usize];
                term = Some(match term {
                    None => p.clone(),
                    Some(t) => t.mul_unchecked(p),
                });
            }
            let term = term.expect("reduced series has no constant term");
            for (te, tc) in &term.coeffs {
                out.add_term(*te, &(c * tc));
            }
        }
        Ok(out)
    }

    pub fn to_text_with(&self, vars: &[&str; V]) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&[u32; V]> = self.coeffs.keys().collect();
        keys.sort_by_key(|e| (total(e), Reverse(**e)));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|e| {
                let mono = e
                    .iter()
                    .zip(vars.iter())
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, v)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
                    .collect::<Vec<_>>()
                    .join("*");
                let c = &self.coeffs[e];
                if c.is_one() {
                    mono
                } else if c.num_terms() == 1 {
                    format!("{c}*{mono}")
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn to_text(&self) -> String {
        let vars: [&str; V] = std::array::from_fn(|k| VARIABLES[k]);
        self.to_text_with(&vars)
    }

    /// Reads a series written over the variables `vars`; every other name
    /// must be a generator of `ring`.
    pub fn parse_with(ring: &Ring, truncation: u32, text: &str, vars: &[&str; V]) -> Result<Self> {
        for v in vars {
            if ring.generator_index(v).is_some() {
                return Err(Error::Config(format!(
                    "series variable `{v}` clashes with a ring generator"
                )));
            }
        }
        let poly = parse_named_poly(text)?;
        let mut terms = Vec::new();
        for named in poly {
            let mut e = [0u32; V];
            let mut exps = Vec::new();
            for (name, k) in named {
                if let Some(slot) = vars.iter().position(|v| *v == name) {
                    e[slot] = k;
                } else {
                    let i = ring
                        .generator_index(&name)
                        .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                    exps.push((i, k));
                }
            }
            let m = ring.monomial(&exps)?;
            terms.push((e, RingElement::from_monomial(ring, m)));
        }
        Self::from_terms(ring, truncation, terms)
    }

    pub fn parse(ring: &Ring, truncation: u32, text: &str) -> Result<Self> {
        let vars: [&str; V] = std::array::from_fn(|k| VARIABLES[k]);
        Self::parse_with(ring, truncation, text, &vars)
    }

    /// JSON form: terms in canonical order as `{exponent, coefficient}`.
    pub fn to_json_terms(&self) -> Vec<SeriesTerm> {
        let mut keys: Vec<&[u32; V]> = self.coeffs.keys().collect();
        keys.sort_by_key(|e| (total(e), Reverse(**e)));
        keys.into_iter()
            .map(|e| SeriesTerm {
                exponent: if V == 1 {
                    JsonExponent::Single(e[0])
                } else {
                    JsonExponent::Multi(e.to_vec())
                },
                coefficient: self.coeffs[e].to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(ring: &Ring, truncation: u32, terms: &[SeriesTerm]) -> Result<Self> {
        let mut out = Vec::new();
        for t in terms {
            let exps: Vec<u32> = match &t.exponent {
                JsonExponent::Single(n) => vec![*n],
                JsonExponent::Multi(v) => v.clone(),
            };
            let e: [u32; V] = exps
                .try_into()
                .map_err(|_| Error::Parse(format!("exponent must have {V} entries")))?;
            out.push((e, RingElement::parse(ring, &t.coefficient)?));
        }
        Self::from_terms(ring, truncation, out)
    }
}

impl<const V: usize> fmt::Display for Series<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Series<1> {
    /// The identity series `x`.
    pub fn identity(ring: &Ring, truncation: u32) -> Self {
        Self::variable(ring, truncation, 0)
    }

    /// Builds `Σ c_n x^n` from `(n, c_n)` pairs.
    pub fn from_coefficients(ring: &Ring, truncation: u32, coeffs: impl IntoIterator<Item = (u32, RingElement)>) -> Result<Self> {
        Self::from_terms(ring, truncation, coeffs.into_iter().map(|(n, c)| ([n], c)))
    }

    pub fn coeff(&self, n: u32) -> RingElement {
        self.coefficient(&[n])
    }

    pub fn is_strict(&self) -> bool {
        self.coeff(1).is_one()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<u32> {
        self.coeffs.keys().map(|e| e[0]).collect()
    }

    /// The same series viewed in variable `k` of a `W`-variable ring.
    pub fn in_variable<const W: usize>(&self, k: usize) -> Series<W> {
        let mut out = Series::<W>::zero(&self.ring, self.truncation);
        for (e, c) in &self.coeffs {
            let mut d = [0u32; W];
            d[k] = e[0];
            out.coeffs.insert(d, c.clone());
        }
        out
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Series1) -> Result<Series1> {
        self.substitute(&[g])
    }
}

impl Series<2> {
    /// `x + y`.
    pub fn additive(ring: &Ring, truncation: u32) -> Self {
        Self::variable(ring, truncation, 0)
            .checked_add(&Self::variable(ring, truncation, 1))
            .expect("same ring and truncation")
    }

    /// `F(y, x)`.
    pub fn swap(&self) -> Self {
        Series {
            ring: self.ring.clone(),
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|(e, c)| ([e[1], e[0]], c.clone())).collect(),
        }
    }
}

/// A series whose linear coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictSeries1(Series1);

impl StrictSeries1 {
    pub fn new(series: Series1) -> Result<Self> {
        if series.is_strict() {
            Ok(StrictSeries1(series))
        } else {
            Err(Error::NonStrict)
        }
    }

    pub fn identity(ring: &Ring, truncation: u32) -> Self {
        StrictSeries1(Series1::identity(ring, truncation))
    }

    /// `x + Σ c_n x^n` for `n ≥ 2`; an entry at `n = 1` is rejected.
    pub fn from_higher(ring: &Ring, truncation: u32, coeffs: impl IntoIterator<Item = (u32, RingElement)>) -> Result<Self> {
        let mut terms = vec![(1, RingElement::one(ring))];
        for (n, c) in coeffs {
            if n <= 1 {
                return Err(Error::NonStrict);
            }
            terms.push((n, c));
        }
        Self::new(Series1::from_coefficients(ring, truncation, terms)?)
    }

    pub fn parse(ring: &Ring, truncation: u32, text: &str) -> Result<Self> {
        Self::new(Series1::parse(ring, truncation, text)?)
    }

    pub fn as_series(&self) -> &Series1 {
        &self.0
    }

    pub fn into_series(self) -> Series1 {
        self.0
    }

    pub fn truncate(&self, m: u32) -> Self {
        StrictSeries1(self.0.truncate(m))
    }

    pub fn compose(&self, g: &StrictSeries1) -> Result<StrictSeries1> {
        Ok(StrictSeries1(self.0.compose(&g.0)?))
    }

    pub fn map_coefficients(&self, h: &RingHom) -> Result<StrictSeries1> {
        Self::new(self.0.map_coefficients(h)?)
    }

    /// Compositional inverse by degreewise triangular solve: the coefficient
    /// of `x^n` in `f(g)` is `g_n` plus terms in `g_2 … g_{n-1}`.
    pub fn revert(&self) -> StrictSeries1 {
        let n_max = self.0.truncation;
        let ring = &self.0.ring;
        let mut g = Series1::identity(ring, n_max);
        for n in 2..=n_max {
            let f_n = self.0.truncate(n);
            let g_n = g.truncate(n);
            let c = f_n.compose(&g_n).expect("same ring").coeff(n);
            g.add_term([n], &c);
        }
        StrictSeries1(g)
    }
}

impl Deref for StrictSeries1 {
    type Target = Series1;

    fn deref(&self) -> &Series1 {
        &self.0
    }
}

impl fmt::Display for StrictSeries1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn compose1(f: &Series1, g: &Series1) -> Result<Series1> {
    f.compose(g)
}

pub fn revert(f: &StrictSeries1) -> StrictSeries1 {
    f.revert()
}

/// `F(u, v)` for bivariate `F`; `u` and `v` may be series in any number of
/// variables as long as both have the same shape.
pub fn subst2<const W: usize>(f: &Series2, u: &Series<W>, v: &Series<W>) -> Result<Series<W>> {
    f.substitute(&[u, v])
}

pub fn series_add<const V: usize>(a: &Series<V>, b: &Series<V>) -> Result<Series<V>> {
    a.checked_add(b)
}

pub fn series_mul<const V: usize>(a: &Series<V>, b: &Series<V>) -> Result<Series<V>> {
    a.checked_mul(b)
}
