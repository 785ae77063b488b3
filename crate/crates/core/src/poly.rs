//! Exact polynomials in `x, y, z, xb, yb, zb` with big integer coefficients,
//! the Gandhi / Dumont-Foata / generalized Dumont-Foata recursions, and the
//! matching generating sums over pistols and shapes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bijection::{classify_sites, varphi};
use crate::error::{Error, Result};
use crate::pistol::{self, point_stats, prominent_points, ProminentRule};
use crate::shape::shape_stats;

pub const NVARS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    Xb = 3,
    Yb = 4,
    Zb = 5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::Z, Var::Xb, Var::Yb, Var::Zb];

    pub fn name(self) -> &'static str {
        ["x", "y", "z", "xb", "yb", "zb"][self as usize]
    }
}

pub type Exponent = [u32; NVARS];

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

fn exp_of(var: Var, power: u32) -> Exponent {
    let mut e = [0; NVARS];
    e[var as usize] = power;
    e
}

/// Graded reverse lexicographic comparison; `Greater` sorts first.
pub fn grevlex(a: &Exponent, b: &Exponent) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..NVARS).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for t in 1..=n {
        let next = &row[t as usize - 1] * BigInt::from(n - t + 1) / BigInt::from(t);
        row.push(next);
    }
    row
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly::monomial([0; NVARS], c)
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(exp_of(v, 1), 1)
    }

    pub fn monomial(exp: Exponent, coef: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(exp, coef.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &Exponent) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in display order (grevlex, largest first).
    pub fn sorted_terms(&self) -> Vec<(Exponent, BigInt)> {
        let mut v: Vec<(Exponent, BigInt)> =
            self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by(|a, b| grevlex(&b.0, &a.0));
        v
    }

    pub fn add_term(&mut self, exp: Exponent, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        (0..n).fold(MultiPoly::one(), |acc, _| &acc * self)
    }

    /// Substitutes `v -> v + 1`.
    pub fn shift(&self, v: Var) -> MultiPoly {
        let idx = v as usize;
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            for (t, b) in binomial_row(e[idx]).into_iter().enumerate() {
                let mut f = *e;
                f[idx] = t as u32;
                out.add_term(f, c * b);
            }
        }
        out
    }

    /// Renames variables: the exponent of `v` moves to `map(v)`.
    pub fn rename(&self, map: impl Fn(Var) -> Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut f = [0; NVARS];
            for v in Var::ALL {
                f[map(v) as usize] += e[v as usize];
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// `xb -> x, yb -> y, zb -> z`.
    pub fn diagonal(&self) -> MultiPoly {
        self.rename(|v| match v {
            Var::Xb => Var::X,
            Var::Yb => Var::Y,
            Var::Zb => Var::Z,
            other => other,
        })
    }

    pub fn eval(&self, point: &[i64; NVARS]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut term = c.clone();
                for i in 0..NVARS {
                    term *= BigInt::from(point[i]).pow(e[i]);
                }
                term
            })
            .sum()
    }

    /// Invariant under every permutation of `x, y, z`.
    pub fn is_symmetric_xyz(&self) -> bool {
        let swap_xy = self.rename(|v| match v {
            Var::X => Var::Y,
            Var::Y => Var::X,
            other => other,
        });
        let swap_yz = self.rename(|v| match v {
            Var::Y => Var::Z,
            Var::Z => Var::Y,
            other => other,
        });
        &swap_xy == self && &swap_yz == self
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            monomials: self
                .sorted_terms()
                .into_iter()
                .map(|(exp, coef)| MonomialJson {
                    exp,
                    coef: coef.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero();
        for m in &json.monomials {
            let coef = BigInt::from_str(&m.coef)
                .map_err(|_| Error::Domain(format!("bad coefficient {:?}", m.coef)))?;
            p.add_term(m.exp, coef);
        }
        Ok(p)
    }

    fn from_counts(counts: HashMap<Exponent, u64>) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (e, n) in counts {
            p.add_term(e, BigInt::from(n));
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub monomials: Vec<MonomialJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub exp: Exponent,
    pub coef: String,
}

fn monomial_text(e: &Exponent) -> String {
    Var::ALL
        .iter()
        .filter(|v| e[**v as usize] > 0)
        .map(|v| match e[*v as usize] {
            1 => v.name().to_string(),
            n => format!("{}^{n}", v.name()),
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.sorted_terms().iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mono = monomial_text(e);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut e = *a;
                for i in 0..NVARS {
                    e[i] += b[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

fn x() -> MultiPoly {
    MultiPoly::var(Var::X)
}

fn positive(k: usize, what: &str) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain(format!("{what} needs k >= 1")));
    }
    Ok(())
}

/// Gandhi polynomial `Q_{2k}`.
pub fn gandhi(k: usize) -> Result<MultiPoly> {
    positive(k, "gandhi")?;
    let x2 = x().pow(2);
    let mut q = x2.clone();
    for _ in 1..k {
        q = &x2 * &(&q.shift(Var::X) - &q);
    }
    Ok(q)
}

/// Genocchi number `G_{2k} = Q_{2k-2}(1)`.
pub fn genocchi(k: usize) -> Result<BigInt> {
    if k < 2 {
        return Err(Error::Domain(format!("genocchi needs k >= 2 (got {k})")));
    }
    Ok(gandhi(k - 1)?.eval(&[1; NVARS]))
}

/// Dumont-Foata polynomial `F_k(x, y, z)`.
pub fn dumont_foata(k: usize) -> Result<MultiPoly> {
    positive(k, "dumont_foata")?;
    let (y, z) = (MultiPoly::var(Var::Y), MultiPoly::var(Var::Z));
    let factor = &(&x() + &y) * &(&x() + &z);
    let x2 = x().pow(2);
    let mut f = MultiPoly::one();
    for _ in 1..k {
        f = &(&factor * &f.shift(Var::X)) - &(&x2 * &f);
    }
    Ok(f)
}

/// Generalized Dumont-Foata polynomial `Γ_k`.
pub fn gamma(k: usize) -> Result<MultiPoly> {
    positive(k, "gamma")?;
    let v = MultiPoly::var;
    let (x, y, z) = (v(Var::X), v(Var::Y), v(Var::Z));
    let (xb, yb, zb) = (v(Var::Xb), v(Var::Yb), v(Var::Zb));
    let factor = &(&x + &zb) * &(&y + &xb);
    let correction = &(&(&x * &(&yb - &y)) + &(&xb * &(&z - &zb))) - &(&x * &xb);
    let mut g = MultiPoly::one();
    for _ in 1..k {
        let shifted = g.shift(Var::X).shift(Var::Xb);
        g = &(&factor * &shifted) + &(&correction * &g);
    }
    Ok(g)
}

/// Statistic weighting for the sums over pistols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weighting {
    /// `x^(fix + 2)`
    Gandhi,
    /// `x^max y^fix z^pro`
    DfPro,
    /// `x^max y^fix z^sur`
    DfSur,
    /// `x^mo y^fl z^snl xb^me yb^fnl zb^sl`
    Gamma,
}

impl FromStr for Weighting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gandhi" => Ok(Weighting::Gandhi),
            "df-pro" => Ok(Weighting::DfPro),
            "df-sur" => Ok(Weighting::DfSur),
            "gamma" => Ok(Weighting::Gamma),
            _ => Err(Error::Domain(format!("unknown weighting {s:?}"))),
        }
    }
}

pub const PISTOL_BUDGET: usize = 7;
pub const SHAPE_BUDGET: usize = 6;

fn pistol_sum(k: usize, weight: impl Fn(&pistol::Pistol) -> Exponent) -> Result<MultiPoly> {
    positive(k, "pistol sums")?;
    if k > PISTOL_BUDGET {
        return Err(Error::Budget(format!(
            "pistol sums are limited to k <= {PISTOL_BUDGET} (got {k})"
        )));
    }
    let mut counts: HashMap<Exponent, u64> = HashMap::new();
    for f in pistol::enumerate(k) {
        *counts.entry(weight(&f)).or_default() += 1;
    }
    Ok(MultiPoly::from_counts(counts))
}

pub fn poly_from_pistols(k: usize, weighting: Weighting) -> Result<MultiPoly> {
    pistol_sum(k, |f| {
        let s = point_stats(f);
        let n = |v: usize| v as u32;
        match weighting {
            Weighting::Gandhi => exp_of(Var::X, n(s.fix) + 2),
            Weighting::DfPro => [n(s.max), n(s.fix), n(s.pro), 0, 0, 0],
            Weighting::DfSur => [n(s.max), n(s.fix), n(s.sur), 0, 0, 0],
            Weighting::Gamma => [n(s.mo), n(s.fl), n(s.snl), n(s.me), n(s.fnl), n(s.sl)],
        }
    })
}

/// `Σ x^max y^fix z^pro` under a given prominent-point convention.
pub fn poly_df_pro_with(k: usize, rule: ProminentRule) -> Result<MultiPoly> {
    pistol_sum(k, |f| {
        let s = point_stats(f);
        [
            s.max as u32,
            s.fix as u32,
            prominent_points(f, rule) as u32,
            0,
            0,
            0,
        ]
    })
}

/// `Σ x^ful y^fr z^(fro + sch)` over the irreducible `(k + 1)`-shapes, taken
/// as the image of the pistols of height `k`.
pub fn poly_from_shapes(k: usize) -> Result<MultiPoly> {
    positive(k, "shape sums")?;
    if k > SHAPE_BUDGET {
        return Err(Error::Budget(format!(
            "shape sums are limited to k <= {SHAPE_BUDGET} (got {k})"
        )));
    }
    if k == 1 {
        return Ok(MultiPoly::one());
    }
    let mut counts: HashMap<Exponent, u64> = HashMap::new();
    for f in pistol::enumerate(k) {
        let shape = varphi(&f)?;
        let sites = classify_sites(&shape, k + 1)?;
        let fr = shape_stats(&shape, k + 1)?.fr() as u32;
        let e = [
            sites.ful as u32,
            fr,
            (sites.fro + sites.sch) as u32,
            0,
            0,
            0,
        ];
        *counts.entry(e).or_default() += 1;
    }
    Ok(MultiPoly::from_counts(counts))
}
