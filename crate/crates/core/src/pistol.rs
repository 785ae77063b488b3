//! Surjective pistols: maps `f : [2k] -> {2, 4, ..., 2k}` with `f(j) >= j`
//! hitting every even value.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, PistolError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPistol")]
pub struct Pistol {
    height: usize,
    values: Vec<usize>,
}

#[derive(Deserialize)]
struct RawPistol {
    height: Option<usize>,
    values: Vec<usize>,
}

impl TryFrom<RawPistol> for Pistol {
    type Error = Error;

    fn try_from(raw: RawPistol) -> Result<Self> {
        let pistol = Pistol::new(raw.values)?;
        if let Some(h) = raw.height {
            if h != pistol.height {
                return Err(Error::Domain(format!(
                    "declared height {h} does not match {} values",
                    pistol.values.len()
                )));
            }
        }
        Ok(pistol)
    }
}

/// Checks every clause of the definition and names the first one violated.
pub fn validate(values: &[usize]) -> std::result::Result<Pistol, PistolError> {
    let n = values.len();
    if n == 0 || n % 2 == 1 {
        return Err(PistolError::BadLength(n));
    }
    for (idx, &value) in values.iter().enumerate() {
        let position = idx + 1;
        if value % 2 == 1 {
            return Err(PistolError::OddValue { position, value });
        }
        if value == 0 || value > n {
            return Err(PistolError::OutOfCodomain {
                position,
                value,
                max: n,
            });
        }
        if value < position {
            return Err(PistolError::BelowPosition { position, value });
        }
    }
    let mut hit = vec![false; n / 2 + 1];
    for &v in values {
        hit[v / 2] = true;
    }
    if let Some(i) = (1..=n / 2).find(|&i| !hit[i]) {
        return Err(PistolError::NotSurjective(2 * i));
    }
    Ok(Pistol {
        height: n / 2,
        values: values.to_vec(),
    })
}

impl Pistol {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        Ok(validate(&values)?)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `f(j)` for 1-based `j`.
    pub fn at(&self, j: usize) -> usize {
        self.values[j - 1]
    }

    /// Smallest `j` with `f(j) = value`.
    pub fn min_preimage(&self, value: usize) -> Option<usize> {
        self.values.iter().position(|&v| v == value).map(|i| i + 1)
    }

    /// `fix` as a vector: entry `i - 1` is 1 iff `f(2i) = 2i`, for `i < height`.
    pub fn fix_vector(&self) -> Vec<u8> {
        (1..self.height)
            .map(|i| u8::from(self.at(2 * i) == 2 * i))
            .collect()
    }

    /// Tableau with right-justified rows of lengths `2, 4, ..., 2k` from the
    /// top. Column `j` is counted from the right, so its top cell sits in row
    /// `ceil(j/2)`; the dot of column `j` is on the row of `f(j)`.
    pub fn render(&self) -> String {
        let n = self.values.len();
        let mut out = String::new();
        for i in 1..=self.height {
            for j in (1..=n).rev() {
                let cell = if j > 2 * i {
                    "   "
                } else if self.at(j) == 2 * i {
                    "[*]"
                } else {
                    "[ ]"
                };
                out.push_str(cell);
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Pistol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Lexicographic enumeration of `SP_k` by backtracking. A prefix is cut as
/// soon as the positions left cannot cover the even values still missing.
pub struct Pistols {
    height: usize,
    values: Vec<usize>,
    // hits[i] = number of assigned positions with value 2i
    hits: Vec<usize>,
    started: bool,
    done: bool,
}

pub fn enumerate(height: usize) -> Pistols {
    assert!(height >= 1, "pistol height must be positive");
    Pistols {
        height,
        values: Vec::with_capacity(2 * height),
        hits: vec![0; height + 1],
        started: false,
        done: false,
    }
}

impl Pistols {
    fn n(&self) -> usize {
        2 * self.height
    }

    // every missing value 2i needs a free position j <= 2i
    fn feasible(&self) -> bool {
        let assigned = self.values.len();
        let mut missing = 0;
        for i in 1..=self.height {
            if self.hits[i] == 0 {
                missing += 1;
            }
            let free = (2 * i).saturating_sub(assigned);
            if missing > free {
                return false;
            }
        }
        true
    }

    fn push(&mut self, v: usize) {
        self.values.push(v);
        self.hits[v / 2] += 1;
    }

    fn pop(&mut self) -> Option<usize> {
        let v = self.values.pop()?;
        self.hits[v / 2] -= 1;
        Some(v)
    }

    /// Extends the current prefix with smallest feasible values; on a dead end
    /// advances to the next prefix. Returns false when the space is exhausted.
    fn descend(&mut self) -> bool {
        while self.values.len() < self.n() {
            let j = self.values.len() + 1;
            let first = j + (j % 2);
            if !self.try_from_value(first) && !self.advance() {
                return false;
            }
        }
        true
    }

    // pushes the smallest feasible value >= `from` at the next position
    fn try_from_value(&mut self, from: usize) -> bool {
        let mut v = from;
        while v <= self.n() {
            self.push(v);
            if self.feasible() {
                return true;
            }
            self.pop();
            v += 2;
        }
        false
    }

    // replaces the deepest position that still has a larger feasible value
    fn advance(&mut self) -> bool {
        while let Some(v) = self.pop() {
            if self.try_from_value(v + 2) {
                return true;
            }
        }
        false
    }
}

impl Iterator for Pistols {
    type Item = Pistol;

    fn next(&mut self) -> Option<Pistol> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.descend()
        } else {
            self.advance() && self.descend()
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(Pistol {
            height: self.height,
            values: self.values.clone(),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointStats {
    pub fix: usize,
    pub max: usize,
    pub pro: usize,
    pub sur: usize,
    pub mo: usize,
    pub me: usize,
    pub fl: usize,
    pub fnl: usize,
    pub sl: usize,
    pub snl: usize,
    pub fix_vector: Vec<u8>,
}

/// Prominent-point conventions. `pro` counts positions `j` in `[2k - 2]`
/// whose value strictly exceeds every earlier value; the flags control
/// whether `j = 1` may qualify and whether maximal points are excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProminentRule {
    pub include_first: bool,
    pub exclude_maximal: bool,
}

impl ProminentRule {
    pub const DEFAULT: ProminentRule = ProminentRule {
        include_first: true,
        exclude_maximal: true,
    };

    pub fn all() -> [ProminentRule; 4] {
        let rule = |include_first, exclude_maximal| ProminentRule {
            include_first,
            exclude_maximal,
        };
        [
            rule(true, true),
            rule(true, false),
            rule(false, true),
            rule(false, false),
        ]
    }
}

pub fn prominent_points(f: &Pistol, rule: ProminentRule) -> usize {
    let top = 2 * f.height;
    let mut running_max = 0;
    let mut count = 0;
    for j in 1..=top.saturating_sub(2) {
        let v = f.at(j);
        let record = v > running_max;
        let eligible = (j > 1 || rule.include_first) && !(rule.exclude_maximal && v == top);
        if record && eligible {
            count += 1;
        }
        running_max = running_max.max(v);
    }
    count
}

/// Point statistics over positions `j` in `[2k - 2]`.
pub fn point_stats(f: &Pistol) -> PointStats {
    let top = 2 * f.height;
    let domain = top - 2;
    let values = &f.values[..domain];
    let lined = |j: usize| {
        let v = values[j - 1];
        values
            .iter()
            .enumerate()
            .any(|(idx, &w)| idx + 1 != j && w == v)
    };
    let mut s = PointStats {
        fix_vector: f.fix_vector(),
        pro: prominent_points(f, ProminentRule::DEFAULT),
        ..PointStats::default()
    };
    for j in 1..=domain {
        let v = values[j - 1];
        if v == j {
            s.fix += 1;
            if lined(j) {
                s.fl += 1;
            } else {
                s.fnl += 1;
            }
        }
        if v == top {
            s.max += 1;
            if j % 2 == 1 {
                s.mo += 1;
            } else {
                s.me += 1;
            }
        }
        if v == j + 1 {
            s.sur += 1;
            if lined(j) {
                s.sl += 1;
            } else {
                s.snl += 1;
            }
        }
    }
    s
}
