//! Formal group laws up to truncation.
//!
//! A [`FormalGroupLaw`] is a bivariate series together with the degree up to
//! which unitality, commutativity and associativity have been checked.
//! Nothing is certified beyond that degree.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::linalg::{solve_lex_min, BitMatrix};
use crate::ring::{same_ring, Monomial, Ring, RingElement};
use crate::series::{Series1, Series2, Series3, StrictSeries1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Unitality,
    Commutativity,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Unitality => "unitality",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
        })
    }
}

/// A bivariate series certified as a formal group law through `validated_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalGroupLaw {
    law: Series2,
    validated_to: u32,
}

impl FormalGroupLaw {
    /// `x + y`, valid to every degree.
    pub fn additive(ring: &Ring, truncation: u32) -> Self {
        FormalGroupLaw {
            law: Series2::additive(ring, truncation),
            validated_to: truncation,
        }
    }

    /// `x + y + xy`.
    pub fn multiplicative(ring: &Ring, truncation: u32) -> Self {
        let law = Series2::parse(ring, truncation, "x + y + x*y").expect("reduced");
        check_axioms(&law, truncation).expect("multiplicative law satisfies the axioms")
    }

    /// Parses a law and certifies it to its full truncation.
    pub fn parse(ring: &Ring, truncation: u32, text: &str) -> Result<Self> {
        check_axioms(&Series2::parse(ring, truncation, text)?, truncation)
    }

    pub fn law(&self) -> &Series2 {
        &self.law
    }

    pub fn validated_to(&self) -> u32 {
        self.validated_to
    }

    pub fn truncation(&self) -> u32 {
        self.law.truncation()
    }

    pub fn ring(&self) -> &Ring {
        self.law.ring()
    }

    pub fn is_additive(&self) -> bool {
        self.law == Series2::additive(self.ring(), self.truncation())
    }

    /// Pushes the coefficients forward along `h`. Ring maps preserve the
    /// axioms, so the certificate carries over.
    pub fn base_change(&self, h: &RingHom) -> Result<Self> {
        Ok(FormalGroupLaw {
            law: self.law.map_coefficients(h)?,
            validated_to: self.validated_to,
        })
    }

    pub fn truncate(&self, m: u32) -> Self {
        FormalGroupLaw {
            law: self.law.truncate(m),
            validated_to: self.validated_to.min(m),
        }
    }
}

impl fmt::Display for FormalGroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.law.fmt(f)
    }
}

fn first_failure<const V: usize>(residual: &crate::series::Series<V>, vars: &[&str; V]) -> Option<(u32, String)> {
    residual
        .lowest_degree()
        .map(|d| (d, residual.homogeneous_part(d).to_text_with(vars)))
}

/// Certifies `law` as a formal group law through degree `d`, or reports the
/// lowest-degree failure. Ties go to unitality, then commutativity, then
/// associativity.
pub fn check_axioms(law: &Series2, d: u32) -> Result<FormalGroupLaw> {
    if d > law.truncation() {
        return Err(Error::DegreeOutOfRange {
            degree: d,
            max: law.truncation(),
        });
    }
    let g = law.truncate(d);
    let ring = g.ring().clone();
    let x = Series1::identity(&ring, d);
    let zero = Series1::zero(&ring, d);

    let left = g.substitute(&[&x, &zero])?.checked_add(&x)?;
    let right = g.substitute(&[&zero, &x])?.checked_add(&x)?;
    let comm = g.checked_add(&g.swap())?;

    let (x3, y3, z3) = (
        Series3::variable(&ring, d, 0),
        Series3::variable(&ring, d, 1),
        Series3::variable(&ring, d, 2),
    );
    let fxy = g.substitute(&[&x3, &y3])?;
    let fyz = g.substitute(&[&y3, &z3])?;
    let assoc = g
        .substitute(&[&fxy, &z3])?
        .checked_add(&g.substitute(&[&x3, &fyz])?)?;

    let candidates = [
        (Axiom::Unitality, first_failure(&left, &["x"])),
        (Axiom::Unitality, first_failure(&right, &["y"])),
        (Axiom::Commutativity, first_failure(&comm, &["x", "y"])),
        (Axiom::Associativity, first_failure(&assoc, &["x", "y", "z"])),
    ];
    let worst = candidates
        .into_iter()
        .filter_map(|(a, f)| f.map(|(deg, res)| (deg, a, res)))
        .min_by_key(|(deg, _, _)| *deg);
    match worst {
        Some((degree, axiom, residual)) => Err(Error::AxiomViolation {
            axiom: axiom.to_string(),
            degree,
            residual,
        }),
        None => Ok(FormalGroupLaw {
            law: law.clone(),
            validated_to: d,
        }),
    }
}

/// `[n](x)` by left iteration: `[0] = 0`, `[n] = F(x, [n-1](x))`.
pub fn n_series(law: &FormalGroupLaw, n: u32) -> Series1 {
    let ring = law.ring();
    let t = law.truncation();
    let x = Series1::identity(ring, t);
    let mut acc = Series1::zero(ring, t);
    for _ in 0..n {
        acc = law.law.substitute(&[&x, &acc]).expect("same ring and truncation");
    }
    acc
}

fn conjugate(law: &Series2, phi: &StrictSeries1) -> Result<Series2> {
    let inv = phi.revert();
    let u = inv.in_variable::<2>(0);
    let v = inv.in_variable::<2>(1);
    let inner = law.substitute(&[&u, &v])?;
    phi.substitute(&[&inner])
}

/// `φ⁻¹(φ(x) + φ(y))`: the law that `φ` carries to the additive one.
pub fn twist_additive(phi: &StrictSeries1) -> Result<FormalGroupLaw> {
    let ring = phi.ring();
    let t = phi.truncation();
    let sum = phi
        .in_variable::<2>(0)
        .checked_add(&phi.in_variable::<2>(1))?;
    let law = phi.revert().substitute(&[&sum])?;
    debug_assert!(law.coefficient(&[1, 0]).is_one());
    check_axioms(&law, t).map_err(|e| {
        Error::ModelInconsistency(format!("twisted law over {} generators failed: {e}", ring.num_generators()))
    })
}

/// `φ(F(φ⁻¹(x), φ⁻¹(y)))`, certified to the input's degree.
pub fn transport(law: &FormalGroupLaw, phi: &StrictSeries1) -> Result<FormalGroupLaw> {
    if !same_ring(law.ring(), phi.ring()) {
        return Err(Error::RingMismatch);
    }
    let g = conjugate(&law.law, phi)?;
    check_axioms(&g, law.validated_to)
}

/// Outcome of comparing `f(F(x, y))` with `F(f(x), f(y))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndomorphismCheck {
    pub holds: bool,
    pub failing_degree: Option<u32>,
    pub residual: Option<String>,
}

/// Checks the endomorphism identity through the law's certified degree.
pub fn is_endomorphism(f: &Series1, law: &FormalGroupLaw) -> Result<EndomorphismCheck> {
    let lhs = f.substitute(&[&law.law])?;
    let fx = f.in_variable::<2>(0);
    let fy = f.in_variable::<2>(1);
    let rhs = law.law.substitute(&[&fx, &fy])?;
    let diff = lhs.checked_add(&rhs)?.truncate(law.validated_to);
    Ok(match first_failure(&diff, &["x", "y"]) {
        None => EndomorphismCheck {
            holds: true,
            failing_degree: None,
            residual: None,
        },
        Some((d, r)) => EndomorphismCheck {
            holds: false,
            failing_degree: Some(d),
            residual: Some(r),
        },
    })
}

/// Why no strict isomorphism to the additive law exists at `degree`.
///
/// `cocycle` is the degree-`degree` part of the partially transported law
/// minus `x + y`; `residual` is the same degree of its 2-series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub degree: u32,
    pub residual: String,
    pub cocycle: String,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no strict isomorphism to the additive law at degree {} (2-series residual {}, cocycle {})",
            self.degree, self.residual, self.cocycle
        )
    }
}

/// Finds a strict `φ` with `φ(F(x,y)) = φ(x) + φ(y)` through the law's
/// certified degree.
///
/// The identity is linear in the coefficients of `φ`. At total degree `d`
/// the unknown `φ_d` meets `(x+y)^d - x^d - y^d` and everything else is
/// fixed by lower coefficients, so each degree is one GF(2) system over the
/// monomial basis of the coefficient ring. Free choices resolve to the
/// lexicographically smallest solution in basis order.
pub fn solve_iso_to_additive(law: &FormalGroupLaw) -> std::result::Result<StrictSeries1, Obstruction> {
    let ring = law.ring().clone();
    let t = law.truncation();
    let top = law.validated_to.min(t);

    let basis = ring.full_basis();
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut powers: Vec<Series2> = vec![Series2::zero(&ring, t), law.law.clone()];
    for n in 2..=top {
        let next = powers[n as usize - 1]
            .checked_mul(&law.law)
            .expect("same ring and truncation");
        powers.push(next);
    }

    let mut phi: Vec<RingElement> = vec![RingElement::zero(&ring), RingElement::one(&ring)];
    for d in 2..=top {
        let mut lhs_cells = Vec::new();
        let mut rhs_cells = Vec::new();
        for i in 0..=d {
            let cell = [i, d - i];
            let mut c = powers[d as usize].coefficient(&cell);
            if i == d || i == 0 {
                c.add_assign_ref(&RingElement::one(&ring));
            }
            let mut rhs = RingElement::zero(&ring);
            for n in 1..d {
                let p = powers[n as usize].coefficient(&cell);
                if !p.is_zero() {
                    rhs.add_assign_ref(&(&phi[n as usize] * &p));
                }
            }
            if c.is_zero() && rhs.is_zero() {
                continue;
            }
            lhs_cells.push(c);
            rhs_cells.push(rhs);
        }

        let rows = lhs_cells.len() * basis.len();
        let mut a = BitMatrix::zeros(rows, basis.len());
        let mut b = vec![false; rows];
        for (k, (c, rhs)) in lhs_cells.iter().zip(&rhs_cells).enumerate() {
            let base = k * basis.len();
            for (col, m) in basis.iter().enumerate() {
                let image = &RingElement::from_monomial(&ring, m.clone()) * c;
                for term in image.terms() {
                    a.flip(base + index[term], col);
                }
            }
            for term in rhs.terms() {
                b[base + index[term]] = true;
            }
        }

        match solve_lex_min(&a, &b) {
            Ok(v) => {
                let coeff = RingElement::from_monomials(
                    &ring,
                    basis.iter().zip(&v).filter(|(_, bit)| **bit).map(|(m, _)| m.clone()),
                );
                phi.push(coeff);
            }
            Err(_) => return Err(obstruction(law, &phi, d)),
        }
    }

    let series = StrictSeries1::from_higher(
        &ring,
        t,
        phi.into_iter().enumerate().skip(2).map(|(n, c)| (n as u32, c)),
    )
    .expect("coefficients start at x^2");
    Ok(series)
}

fn obstruction(law: &FormalGroupLaw, phi: &[RingElement], d: u32) -> Obstruction {
    let ring = law.ring();
    let partial = StrictSeries1::from_higher(
        ring,
        law.truncation(),
        phi.iter().enumerate().skip(2).map(|(n, c)| (n as u32, c.clone())),
    )
    .expect("coefficients start at x^2");
    let g = conjugate(&law.law, &partial).expect("same ring");
    let cocycle = g.homogeneous_part(d);
    let transported = FormalGroupLaw {
        law: g,
        validated_to: law.validated_to,
    };
    Obstruction {
        degree: d,
        residual: n_series(&transported, 2).homogeneous_part(d).to_text(),
        cocycle: cocycle.to_text(),
    }
}
