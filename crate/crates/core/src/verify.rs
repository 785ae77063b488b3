//! Verification suites shared by the command line `verify` command and the
//! acceptance tests. Every check reports instead of panicking.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{phi_classified, s_sequence_shape, varphi, varphi_trace};
use crate::error::{Error, Result};
use crate::oracle::{box_enumerate_irreducible, check_confluence, BoxBound};
use crate::partial::max_multiplicity;
use crate::pistol::{self, Pistol, ProminentRule};
use crate::poly::{
    dumont_foata, gamma, gandhi, genocchi, poly_df_pro_with, poly_from_pistols, poly_from_shapes,
    Weighting,
};
use crate::shape::{is_irreducible, shape_stats, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, r: Result<Check>) -> Self {
        let name = name.into();
        r.unwrap_or_else(|e| Check::new(name, false, e.to_string()))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<40} {}", self.name, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Counts,
    Bijection,
    Theorems,
    Conjecture,
    Confluence,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "counts" => Suite::Counts,
            "bijection" => Suite::Bijection,
            "theorems" => Suite::Theorems,
            "conjecture" => Suite::Conjecture,
            "confluence" => Suite::Confluence,
            _ => return Err(Error::Domain(format!("unknown suite {s:?}"))),
        })
    }
}

/// Runs one suite for shape-side `k` (pistols of height `k - 1`). `deep`
/// enables the expensive box enumeration at `k = 5`.
pub fn run_suite(k: usize, suite: Suite, deep: bool) -> Vec<Check> {
    if k < 2 {
        return vec![Check::new(
            "k",
            false,
            format!("k must be at least 2 (got {k})"),
        )];
    }
    let mut out = Vec::new();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    if wants(Suite::Counts) {
        out.push(counts(k));
    }
    if wants(Suite::Bijection) {
        out.extend(bijection(k));
        if k >= 3 {
            out.push(Check::from_result(
                "shape sequence rebuilds k-boundary",
                sequence_rebuild(k),
            ));
        }
        if k >= 3 && (k <= 4 || (k == 5 && deep)) {
            out.push(Check::from_result("box oracle equals image", box_oracle(k)));
        }
    }
    if wants(Suite::Conjecture) {
        out.push(Check::from_result(
            "shapes per fr-vector match pistols",
            conjecture(k),
        ));
    }
    if wants(Suite::Theorems) {
        out.extend(theorems(k - 1));
    }
    if wants(Suite::Confluence) && k >= 3 {
        out.push(Check::from_result("rule order independence", confluence(k)));
    }
    out
}

/// `|SP_{k-1}|` against `G_{2k}`.
pub fn counts(k: usize) -> Check {
    let name = format!("|SP_{}| = G_{}", k - 1, 2 * k);
    let run = || -> Result<Check> {
        let n = pistol::enumerate(k - 1).count();
        let g = genocchi(k)?;
        Ok(Check::new(
            name.clone(),
            BigInt::from(n) == g,
            format!("enumerated {n}, recursion {g}"),
        ))
    };
    Check::from_result(name.clone(), run())
}

struct PistolRun {
    f: Pistol,
    shape: Result<Partition>,
    back: Result<Pistol>,
    again: Result<Partition>,
    irreducible: bool,
    z_in_range: bool,
    fr_vector: Option<Vec<u8>>,
}

fn run_pistol(f: Pistol, k: usize) -> PistolRun {
    let shape = varphi(&f);
    let mut fr_vector = None;
    let (back, again, irreducible, z_in_range) = match &shape {
        Ok(p) => {
            let back = phi_classified(p, k).map(|(g, _)| g);
            // the forward map is deterministic, so it only needs rerunning
            // when the inverse returned a different pistol
            let again = match &back {
                Ok(g) if g == &f => Ok(p.clone()),
                Ok(g) => varphi(g),
                Err(e) => Err(e.clone()),
            };
            let irreducible = is_irreducible(p, k).unwrap_or(false);
            let stats = if k < 3 { None } else { shape_stats(p, k).ok() };
            fr_vector = if k < 3 {
                Some(Vec::new())
            } else {
                stats.as_ref().map(|s| s.fr_vector.clone())
            };
            let z_in_range = k < 3
                || stats
                    .is_some_and(|s| (1..=2 * k - 4).all(|j| s.z_at(j) <= max_multiplicity(k, j)));
            (back, again, irreducible, z_in_range)
        }
        Err(e) => (Err(e.clone()), Err(e.clone()), false, false),
    };
    PistolRun {
        f,
        shape,
        back,
        again,
        irreducible,
        z_in_range,
        fr_vector,
    }
}

fn first_failures<'a>(
    runs: impl Iterator<Item = &'a PistolRun>,
    what: impl Fn(&PistolRun) -> String,
) -> String {
    let list: Vec<String> = runs.take(3).map(what).collect();
    list.join("; ")
}

fn summary(
    name: &str,
    total: usize,
    bad: Vec<&PistolRun>,
    what: impl Fn(&PistolRun) -> String,
) -> Check {
    if bad.is_empty() {
        Check::new(name, true, format!("{total} of {total}"))
    } else {
        let detail = format!(
            "{} of {total} fail, e.g. {}",
            bad.len(),
            first_failures(bad.into_iter(), what)
        );
        Check::new(name, false, detail)
    }
}

/// Forward and inverse maps on every pistol of height `k - 1`.
pub fn bijection(k: usize) -> Vec<Check> {
    let pistols: Vec<Pistol> = pistol::enumerate(k - 1).collect();
    let total = pistols.len();
    let runs: Vec<PistolRun> = pistols.into_par_iter().map(|f| run_pistol(f, k)).collect();
    let show_err = |r: &PistolRun| match &r.shape {
        Ok(p) => format!("{} -> {p}", r.f),
        Err(e) => format!("{}: {e}", r.f),
    };

    let mut checks = Vec::new();
    let failed: Vec<&PistolRun> = runs.iter().filter(|r| r.shape.is_err()).collect();
    checks.push(summary(
        "forward map runs (all internal checks)",
        total,
        failed,
        show_err,
    ));

    let images: BTreeSet<&Partition> = runs.iter().filter_map(|r| r.shape.as_ref().ok()).collect();
    let ok_count = runs.iter().filter(|r| r.shape.is_ok()).count();
    checks.push(Check::new(
        "forward map injective",
        images.len() == ok_count && ok_count == total,
        format!("{} distinct images of {total} pistols", images.len()),
    ));

    let bad: Vec<&PistolRun> = runs.iter().filter(|r| !r.irreducible).collect();
    checks.push(summary(
        "images are irreducible k-shapes",
        total,
        bad,
        show_err,
    ));

    let bad: Vec<&PistolRun> = runs
        .iter()
        .filter(|r| r.back.as_ref().ok() != Some(&r.f))
        .collect();
    checks.push(summary(
        "inverse after forward is identity",
        total,
        bad,
        |r| match &r.back {
            Ok(g) => format!("{} -> {g}", r.f),
            Err(e) => format!("{}: {e}", r.f),
        },
    ));

    let bad: Vec<&PistolRun> = runs
        .iter()
        .filter(|r| match (&r.shape, &r.again) {
            (Ok(p), Ok(q)) => p != q,
            _ => true,
        })
        .collect();
    checks.push(summary(
        "forward after inverse is identity",
        total,
        bad,
        show_err,
    ));

    let bad: Vec<&PistolRun> = runs.iter().filter(|r| !r.z_in_range).collect();
    checks.push(summary(
        "z_j within [0, k-1-ceil(j/2)]",
        total,
        bad,
        show_err,
    ));

    let mut fix: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut fr: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for r in &runs {
        *fix.entry(r.f.fix_vector()).or_default() += 1;
        if let Some(v) = &r.fr_vector {
            *fr.entry(v.clone()).or_default() += 1;
        }
    }
    checks.push(Check::new(
        "fix/fr histograms agree",
        fix == fr,
        format!("{} vectors", fix.len()),
    ));
    checks
}

/// Rebuilding the sequence of partial shapes from the statistics of each
/// image ends on its labelled k-boundary.
pub fn sequence_rebuild(k: usize) -> Result<Check> {
    let images: Vec<Partition> = pistol::enumerate(k - 1)
        .map(|f| varphi(&f))
        .collect::<Result<_>>()?;
    let bad: Vec<String> = images
        .par_iter()
        .filter_map(|p| s_sequence_shape(p, k).err().map(|e| format!("{p}: {e}")))
        .collect();
    Ok(Check::new(
        "shape sequence rebuilds k-boundary",
        bad.is_empty(),
        match bad.first() {
            None => format!("{} shapes", images.len()),
            Some(first) => format!("{} of {} fail, first {first}", bad.len(), images.len()),
        },
    ))
}

/// Box enumeration against the forward image, element for element.
pub fn box_oracle(k: usize) -> Result<Check> {
    let boxed: BTreeSet<Partition> = box_enumerate_irreducible(k, BoxBound::for_k(k))?
        .into_iter()
        .collect();
    let images: BTreeSet<Partition> = pistol::enumerate(k - 1)
        .map(|f| varphi(&f))
        .collect::<Result<_>>()?;
    let missing = images.difference(&boxed).count();
    let extra = boxed.difference(&images).count();
    Ok(Check::new(
        "box oracle equals image",
        missing == 0 && extra == 0,
        format!(
            "box {} shapes, image {} shapes, {missing} image shapes outside box, {extra} box shapes not hit",
            boxed.len(),
            images.len()
        ),
    ))
}

/// Number of irreducible k-shapes per free-site vector against the number of
/// pistols per fixed-point vector.
pub fn conjecture(k: usize) -> Result<Check> {
    let mut fix: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut fr: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for f in pistol::enumerate(k - 1) {
        *fix.entry(f.fix_vector()).or_default() += 1;
        let p = varphi(&f)?;
        let v = if k < 3 {
            Vec::new()
        } else {
            shape_stats(&p, k)?.fr_vector
        };
        *fr.entry(v).or_default() += 1;
    }
    Ok(Check::new(
        "shapes per fr-vector match pistols",
        fix == fr,
        format!("{} vectors", fix.len()),
    ))
}

fn poly_check(name: &str, got: Result<bool>, detail: &str) -> Check {
    match got {
        Ok(passed) => Check::new(name, passed, detail),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

/// The polynomial identities for pistols of height `n`.
pub fn theorems(n: usize) -> Vec<Check> {
    let d = format!("n = {n}");
    let df = dumont_foata(n);
    let same =
        |a: Result<crate::poly::MultiPoly>, b: &Result<crate::poly::MultiPoly>| -> Result<bool> {
            let b = b.as_ref().map_err(Clone::clone)?;
            Ok(&a? == b)
        };
    let mut checks = vec![
        poly_check(
            "Gandhi sum over pistols",
            same(poly_from_pistols(n, Weighting::Gandhi), &gandhi(n)),
            &d,
        ),
        poly_check(
            "Dumont-Foata sum (surfixed)",
            same(poly_from_pistols(n, Weighting::DfSur), &df),
            &d,
        ),
        poly_check(
            "Dumont-Foata sum (prominent)",
            same(poly_from_pistols(n, Weighting::DfPro), &df),
            &d,
        ),
        poly_check(
            "Dumont-Foata symmetry",
            df.as_ref()
                .map(|p| p.is_symmetric_xyz())
                .map_err(Clone::clone),
            &d,
        ),
        poly_check(
            "generalized sum over pistols",
            same(poly_from_pistols(n, Weighting::Gamma), &gamma(n)),
            &d,
        ),
        poly_check(
            "generalized diagonal",
            same(gamma(n).map(|g| g.diagonal()), &df),
            &d,
        ),
        poly_check(
            "Dumont-Foata sum over shapes",
            same(poly_from_shapes(n), &df),
            &d,
        ),
    ];
    let passing: Vec<String> = ProminentRule::all()
        .into_iter()
        .filter(|&r| same(poly_df_pro_with(n, r), &df).unwrap_or(false))
        .map(|r| format!("{r:?}"))
        .collect();
    checks.push(Check::new(
        "prominent conventions matching",
        passing.contains(&format!("{:?}", ProminentRule::DEFAULT)),
        passing.join(", "),
    ));
    checks
}

pub fn confluence(k: usize) -> Result<Check> {
    let r = check_confluence(k, None)?;
    Ok(Check::new(
        "rule order independence",
        r.is_clean(),
        format!(
            "{} sums over {} pistols, rule firings {}/{}/{}, {} divergences",
            r.instances,
            r.pistols,
            r.rule1,
            r.rule2,
            r.rule3,
            r.divergences.len()
        ),
    ))
}

/// Forward runs whose saturation search fails; the search itself reports a
/// second solution as an error.
pub fn saturation_anomalies(k: usize) -> Result<usize> {
    let mut anomalies = 0;
    for f in pistol::enumerate(k - 1) {
        match varphi_trace(&f) {
            Ok(_) => {}
            Err(Error::Invariant { .. }) => anomalies += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(anomalies)
}
