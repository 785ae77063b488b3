//! The bijection between surjective pistols of height `k - 1` and
//! irreducible k-shapes, in both directions.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partial::{PartialColumn, PartialKShape};
use crate::pistol::Pistol;
use crate::shape::{
    canonical_partition, is_irreducible, is_k_shape, k_boundary, shape_stats, Partition, ShapeStats,
};

/// Which branch of the forward algorithm produced a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    /// The multiplicity was searched for so that the term becomes saturated.
    Saturating,
    /// The multiplicity was read off the pistol value.
    Direct,
}

/// The terms `s^{2k-3}, ..., s^1` of a forward run. `term(j)` is `s^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSequence {
    k: usize,
    terms: Vec<PartialKShape>,
}

impl SSequence {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `s^j` for `j` in `1..=2k-3`.
    pub fn term(&self, j: usize) -> &PartialKShape {
        &self.terms[j - 1]
    }

    pub fn last(&self) -> &PartialKShape {
        &self.terms[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarphiTrace {
    pub k: usize,
    /// `z_j(f)` at index `j - 1`.
    pub z: Vec<usize>,
    /// Branch taken at index `j - 1`.
    pub kinds: Vec<StepKind>,
    pub sequence: SSequence,
    pub shape: Partition,
}

/// Forward map: a pistol of height `h` goes to an irreducible `(h + 1)`-shape.
pub fn varphi(f: &Pistol) -> Result<Partition> {
    Ok(varphi_trace(f)?.shape)
}

pub fn varphi_trace(f: &Pistol) -> Result<VarphiTrace> {
    let k = f.height() + 1;
    if k < 3 {
        return Ok(VarphiTrace {
            k,
            z: Vec::new(),
            kinds: Vec::new(),
            sequence: SSequence {
                k,
                terms: Vec::new(),
            },
            shape: Partition::empty(),
        });
    }
    let n = 2 * k - 4;
    let mut terms = vec![PartialKShape::empty(k); n + 1];
    let mut z = vec![0; n];
    let mut kinds = vec![StepKind::Direct; n];
    for j in (1..=n).rev() {
        let prev = &terms[j];
        let unsaturated = prev.unsaturated_indices().len();
        if unsaturated > j.div_ceil(2) {
            return Err(Error::invariant(
                "unsaturated index bound",
                format!("{unsaturated} unsaturated indices before step {j} of {f}"),
            ));
        }
        let i = f.at(j) / 2;
        let saturating =
            f.at(2 * i) > 2 * i && f.min_preimage(2 * i) == Some(j) && !prev.is_saturated_in(i);
        let zj = if saturating {
            kinds[j - 1] = StepKind::Saturating;
            prev.saturating_z(j, i)?
        } else {
            i - j.div_ceil(2)
        };
        z[j - 1] = zj;
        terms[j - 1] = prev.oplus(j, zj)?;
    }
    let s1 = &terms[0];
    let shape = canonical_partition(&s1.skew())?;
    if !is_k_shape(&shape, k) {
        return Err(Error::invariant(
            "image is a k-shape",
            format!("{shape} from {f}"),
        ));
    }
    if !is_irreducible(&shape, k)? {
        return Err(Error::invariant(
            "image is irreducible",
            format!("{shape} from {f}"),
        ));
    }
    if &labelled_boundary(&shape, k)? != s1 {
        return Err(Error::invariant(
            "k-boundary of the image is the last term",
            format!("{shape} from {f}"),
        ));
    }
    let stats = shape_stats(&shape, k)?;
    if stats.fr_vector != f.fix_vector() {
        return Err(Error::invariant(
            "free sites match fixed points",
            format!("{shape} from {f}"),
        ));
    }
    Ok(VarphiTrace {
        k,
        z,
        kinds,
        sequence: SSequence { k, terms },
        shape,
    })
}

/// The k-boundary of `p` as a partial k-shape: a column of height `v` gets
/// label 1 when its bottom cell lies in a row of length `k + 1 - v`.
pub fn labelled_boundary(p: &Partition, k: usize) -> Result<PartialKShape> {
    let boundary = k_boundary(p, k);
    if !is_k_shape(p, k) {
        return Err(Error::Precondition(format!("{p} is not a {k}-shape")));
    }
    let rs = boundary.rs();
    let columns = boundary
        .columns()
        .iter()
        .filter(|c| c.height > 0)
        .map(|c| {
            let v = c.height;
            let label = if (2..k).contains(&v) && rs[c.bottom] == k + 1 - v {
                1
            } else {
                2
            };
            PartialColumn {
                height: v,
                bottom: c.bottom,
                label,
            }
        })
        .collect();
    PartialKShape::new(k, columns)
}

/// Rebuilds `s^{2k-3}, ..., s^1` of an irreducible k-shape from its `z`
/// statistics and checks that `s^1` is its labelled k-boundary.
pub fn s_sequence_shape(p: &Partition, k: usize) -> Result<SSequence> {
    let stats = shape_stats(p, k)?;
    s_sequence_from(&stats, p)
}

fn s_sequence_from(stats: &ShapeStats, p: &Partition) -> Result<SSequence> {
    let k = stats.k;
    let n = 2 * k - 4;
    let mut terms = vec![PartialKShape::empty(k); n + 1];
    for j in (1..=n).rev() {
        terms[j - 1] = terms[j].oplus(j, stats.z_at(j))?;
    }
    if terms[0] != labelled_boundary(p, k)? {
        return Err(Error::invariant(
            "last term is the k-boundary",
            format!("{p} at k={k}: built {}", terms[0]),
        ));
    }
    Ok(SSequence { k, terms })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiteClassification {
    pub k: usize,
    pub m: usize,
    /// `i_1 < ... < i_m`: the indices with `x_i > 0`.
    pub i_seq: Vec<usize>,
    /// `j_p` for each entry of `i_seq`.
    pub j_seq: Vec<usize>,
    /// Unchained sites.
    pub unchained: BTreeSet<usize>,
    pub chained: BTreeSet<usize>,
    pub z: Vec<usize>,
    pub ful: usize,
    pub fro: usize,
    pub sch: usize,
}

pub fn classify_sites(p: &Partition, k: usize) -> Result<SiteClassification> {
    let stats = shape_stats(p, k)?;
    let seq = s_sequence_from(&stats, p)?;
    classify_with(&stats, &seq)
}

fn classify_with(stats: &ShapeStats, seq: &SSequence) -> Result<SiteClassification> {
    let k = stats.k;
    let n = 2 * k - 4;
    let i_seq: Vec<usize> = (1..=k - 2).filter(|&i| stats.x[i - 1] > 0).collect();
    let mut j_seq = Vec::with_capacity(i_seq.len());
    for &i in &i_seq {
        let jp = (1..2 * i)
            .rev()
            .find(|&j| seq.term(j).is_saturated_in(i))
            .ok_or_else(|| {
                Error::invariant("last term is saturated", format!("index {i} at k={k}"))
            })?;
        j_seq.push(jp);
    }
    let mut unchained: BTreeSet<usize> = (1..=n).collect();
    for j in 1..=n {
        let Some(p) = j_seq.iter().position(|&jp| jp == j) else {
            continue;
        };
        let ip = i_seq[p];
        let covered = unchained
            .iter()
            .any(|&jq| jq < j && jq.div_ceil(2) + stats.z_at(jq) == ip);
        if !covered {
            unchained.remove(&j);
        }
    }
    let chained: BTreeSet<usize> = (1..=n).filter(|j| !unchained.contains(j)).collect();
    let ful = unchained
        .iter()
        .filter(|&&j| stats.z_at(j) == k - 1 - j.div_ceil(2))
        .count();
    let fro = (1..=n)
        .filter(|&j| j % 2 == 1 && stats.z_at(j) == 0)
        .count();
    let sch = chained
        .iter()
        .filter(|&&j| {
            j_seq
                .iter()
                .zip(&i_seq)
                .any(|(&jp, &ip)| jp == j && 2 * ip == j + 1)
        })
        .count();
    Ok(SiteClassification {
        k,
        m: i_seq.len(),
        i_seq,
        j_seq,
        unchained,
        chained,
        z: stats.z.clone(),
        ful,
        fro,
        sch,
    })
}

/// Inverse map: an irreducible k-shape goes to a pistol of height `k - 1`.
pub fn phi(p: &Partition, k: usize) -> Result<Pistol> {
    Ok(phi_classified(p, k)?.0)
}

pub fn phi_classified(p: &Partition, k: usize) -> Result<(Pistol, Option<SiteClassification>)> {
    if k == 2 {
        if !p.is_empty() {
            return Err(Error::Precondition(format!(
                "{p} is not an irreducible 2-shape"
            )));
        }
        return Ok((Pistol::new(vec![2, 2])?, None));
    }
    if k < 2 {
        return Err(Error::Domain(format!("k must be at least 2 (got {k})")));
    }
    let stats = shape_stats(p, k)?;
    let seq = s_sequence_from(&stats, p)?;
    let sites = classify_with(&stats, &seq)?;
    let n = 2 * k - 4;
    let mut values = vec![2 * k - 2; 2 * k - 2];
    for j in 1..=n {
        values[j - 1] = if sites.unchained.contains(&j) {
            2 * (j.div_ceil(2) + stats.z_at(j))
        } else {
            let p = sites.j_seq.iter().position(|&jp| jp == j).ok_or_else(|| {
                Error::invariant("chained sites are j_p values", format!("j={j}"))
            })?;
            2 * sites.i_seq[p]
        };
    }
    let f = Pistol::new(values.clone()).map_err(|e| {
        Error::invariant("image is a surjective pistol", format!("{values:?}: {e}"))
    })?;
    if f.fix_vector() != stats.fr_vector {
        return Err(Error::invariant(
            "fixed points match free sites",
            format!("{f} from {p}"),
        ));
    }
    for (&jp, &ip) in sites.j_seq.iter().zip(&sites.i_seq) {
        let chained = sites.chained.contains(&jp);
        let first = f.min_preimage(2 * ip) == Some(jp);
        if chained != first {
            return Err(Error::invariant(
                "chained exactly when first preimage",
                format!("j={jp}, i={ip} for {p}"),
            ));
        }
    }
    Ok((f, Some(sites)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pistol(v: &[usize]) -> Pistol {
        Pistol::new(v.to_vec()).unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn varphi_small() {
        assert_eq!(varphi(&pistol(&[2, 4, 4, 4])).unwrap(), part(&[2, 1]));
        assert_eq!(varphi(&pistol(&[2, 2, 4, 4])).unwrap(), Partition::empty());
        assert_eq!(varphi(&pistol(&[4, 2, 4, 4])).unwrap(), part(&[1]));
        assert_eq!(varphi(&pistol(&[2, 2])).unwrap(), Partition::empty());
    }

    #[test]
    fn varphi_worked_example() {
        let f = pistol(&[2, 8, 4, 10, 10, 6, 8, 10, 10, 10]);
        let t = varphi_trace(&f).unwrap();
        assert_eq!(t.shape, part(&[12, 9, 7, 6, 5, 3, 3, 2, 1, 1, 1, 1]));
        assert_eq!(t.z, vec![3, 2, 1, 3, 2, 0, 0, 1]);
        assert_eq!(t.sequence.term(5).columns().len(), 3);
        let stats = shape_stats(&t.shape, 6).unwrap();
        assert_eq!(stats.fr_vector, vec![0, 0, 1, 0]);
    }

    #[test]
    fn sequence_of_small_shape() {
        let seq = s_sequence_shape(&part(&[2, 1]), 3).unwrap();
        let one = |h, b, label| PartialColumn {
            height: h,
            bottom: b,
            label,
        };
        assert_eq!(seq.term(2).columns(), &[one(2, 0, 1)]);
        assert_eq!(seq.term(1).columns(), &[one(2, 0, 1), one(1, 0, 2)]);
        let empty = s_sequence_shape(&Partition::empty(), 3).unwrap();
        assert!(empty.term(1).is_empty() && empty.term(3).is_empty());
    }

    #[test]
    fn classification_examples() {
        let c = classify_sites(&part(&[12, 9, 7, 6, 5, 3, 3, 2, 1, 1, 1, 1]), 6).unwrap();
        assert_eq!(c.i_seq, vec![1, 2, 4]);
        assert_eq!(c.j_seq, vec![1, 3, 2]);
        assert_eq!(c.unchained, (4..=8).collect());

        let e = classify_sites(&Partition::empty(), 3).unwrap();
        assert_eq!((e.m, e.ful, e.fro, e.sch), (0, 0, 1, 0));
        assert_eq!(e.unchained, [1, 2].into_iter().collect());

        let t = classify_sites(&part(&[2, 1]), 3).unwrap();
        assert_eq!(t.unchained, [2].into_iter().collect());
        assert_eq!(t.chained, [1].into_iter().collect());
        assert_eq!((t.sch, t.ful, t.fro), (1, 1, 0));
    }

    #[test]
    fn phi_examples() {
        let g = phi(&part(&[12, 9, 7, 6, 5, 3, 3, 2, 1, 1, 1, 1]), 6).unwrap();
        assert_eq!(g.values(), &[2, 8, 4, 10, 10, 6, 8, 10, 10, 10]);
        assert_eq!(phi(&part(&[2, 1]), 3).unwrap().values(), &[2, 4, 4, 4]);
        assert_eq!(phi(&Partition::empty(), 3).unwrap().values(), &[2, 2, 4, 4]);
        assert_eq!(phi(&Partition::empty(), 2).unwrap().values(), &[2, 2]);
        assert!(phi(&part(&[3]), 3).is_err());
    }
}
