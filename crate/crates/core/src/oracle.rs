//! Brute-force ground truth that does not go through the bijection: box
//! enumeration of irreducible k-shapes, and replays of every `⊕` call under
//! several rule orders.

use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::varphi_trace;
use crate::error::{Error, Result};
use crate::partial::{max_multiplicity, PartialKShape, ScanOrder};
use crate::pistol;
use crate::shape::{is_irreducible, is_k_shape, Partition};

/// Partitions with at most `max_height` parts, each at most `max_width`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoxBound {
    pub max_width: usize,
    pub max_height: usize,
}

impl BoxBound {
    pub fn new(max_width: usize, max_height: usize) -> Result<Self> {
        if max_width == 0 || max_height == 0 {
            return Err(Error::Domain("box sides must be positive".into()));
        }
        Ok(BoxBound {
            max_width,
            max_height,
        })
    }

    /// `(k - 1)(k - 2)` on each side: an irreducible k-shape has at most that
    /// many k-boundary columns, and its rows are no more numerous.
    pub fn for_k(k: usize) -> Self {
        let side = ((k - 1) * (k - 2)).max(1);
        BoxBound {
            max_width: side,
            max_height: side,
        }
    }

    /// Number of partitions in the box, `C(w + h, h)`, saturating.
    pub fn size(&self) -> u128 {
        let (w, h) = (self.max_width as u128, self.max_height as u128);
        let mut c: u128 = 1;
        for i in 1..=h {
            c = c.saturating_mul(w + i) / i;
        }
        c
    }
}

/// Largest box the enumeration accepts.
pub const BOX_BUDGET: u128 = 50_000_000;

fn extend(
    prefix: &mut Vec<usize>,
    max_part: usize,
    rows_left: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    visit(prefix);
    if rows_left == 0 {
        return;
    }
    for part in 1..=max_part {
        prefix.push(part);
        extend(prefix, part, rows_left - 1, visit);
        prefix.pop();
    }
}

/// All irreducible k-shapes inside the box, ordered by size then parts.
pub fn box_enumerate_irreducible(k: usize, bound: BoxBound) -> Result<Vec<Partition>> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "box enumeration needs k >= 3 (got {k})"
        )));
    }
    if bound.size() > BOX_BUDGET {
        return Err(Error::Budget(format!(
            "{} partitions in a {}x{} box",
            bound.size(),
            bound.max_width,
            bound.max_height
        )));
    }
    let keep = |parts: &[usize]| -> Option<Partition> {
        let p = Partition::new(parts.to_vec()).ok()?;
        (is_k_shape(&p, k) && is_irreducible(&p, k).ok()?).then_some(p)
    };
    let mut found: Vec<Partition> = (0..=bound.max_width)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            if first == 0 {
                out.extend(keep(&[]));
                return out;
            }
            let mut prefix = vec![first];
            extend(&mut prefix, first, bound.max_height - 1, &mut |parts| {
                out.extend(keep(parts));
            });
            out
        })
        .collect();
    found.sort_by(|a, b| {
        a.size()
            .cmp(&b.size())
            .then_with(|| a.parts().cmp(b.parts()))
    });
    Ok(found)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport {
    pub k: usize,
    pub pistols: usize,
    /// `⊕` calls replayed (each under every scan order).
    pub instances: usize,
    pub rule1: usize,
    pub rule2: usize,
    pub rule3: usize,
    pub divergences: Vec<String>,
}

impl ConfluenceReport {
    pub fn is_clean(&self) -> bool {
        self.divergences.is_empty()
    }
}

/// Replays every `⊕` call the forward algorithm may make on the first
/// `trials` pistols of height `k - 1` (all of them when `None`): each term
/// `s^{j+1}` is summed with every admissible multiplicity, which covers the
/// saturation search, and the results of all scan orders are compared.
pub fn check_confluence(k: usize, trials: Option<usize>) -> Result<ConfluenceReport> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "confluence checks need k >= 3 (got {k})"
        )));
    }
    let pistols: Vec<_> = pistol::enumerate(k - 1)
        .take(trials.unwrap_or(usize::MAX))
        .collect();
    let partials: Vec<Result<ConfluenceReport>> = pistols
        .par_iter()
        .map(|f| {
            let mut report = ConfluenceReport::default();
            let trace = varphi_trace(f)?;
            for j in 1..=2 * k - 4 {
                let s = if j == 2 * k - 4 {
                    PartialKShape::empty(k)
                } else {
                    trace.sequence.term(j + 1).clone()
                };
                for z in 0..=max_multiplicity(k, j) {
                    report.instances += 1;
                    let (base, counts) = s.oplus_traced(j, z, ScanOrder::default())?;
                    report.rule1 += counts.rule1;
                    report.rule2 += counts.rule2;
                    report.rule3 += counts.rule3;
                    for order in ScanOrder::ALL {
                        match s.oplus_traced(j, z, order) {
                            Ok((other, _)) if other == base => {}
                            Ok((other, _)) => report
                                .divergences
                                .push(format!("{f} j={j} z={z} {order:?}: {other} vs {base}")),
                            Err(e) => report
                                .divergences
                                .push(format!("{f} j={j} z={z} {order:?}: {e}")),
                        }
                    }
                }
            }
            Ok(report)
        })
        .collect();
    let mut total = ConfluenceReport {
        k,
        pistols: pistols.len(),
        ..ConfluenceReport::default()
    };
    for part in partials {
        let part = part?;
        total.instances += part.instances;
        total.rule1 += part.rule1;
        total.rule2 += part.rule2;
        total.rule3 += part.rule3;
        total.divergences.extend(part.divergences);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn box_k3() {
        let found = box_enumerate_irreducible(3, BoxBound::new(6, 6).unwrap()).unwrap();
        assert_eq!(found, vec![Partition::empty(), part(&[1]), part(&[2, 1])]);
        let tiny = box_enumerate_irreducible(3, BoxBound::new(1, 1).unwrap()).unwrap();
        assert_eq!(tiny, vec![Partition::empty(), part(&[1])]);
    }

    #[test]
    fn box_k4_count() {
        let found = box_enumerate_irreducible(4, BoxBound::new(6, 6).unwrap()).unwrap();
        assert_eq!(found.len(), 17);
    }

    #[test]
    fn box_size_and_budget() {
        assert_eq!(BoxBound::new(2, 2).unwrap().size(), 6);
        assert_eq!(BoxBound::for_k(5).size(), 2_704_156);
        let huge = BoxBound::new(40, 40).unwrap();
        assert!(matches!(
            box_enumerate_irreducible(6, huge),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn confluence_small() {
        for k in [3, 4] {
            let r = check_confluence(k, None).unwrap();
            assert!(r.is_clean(), "{:?}", r.divergences);
        }
        let empty = check_confluence(4, Some(0)).unwrap();
        assert_eq!((empty.pistols, empty.instances), (0, 0));
    }
}
