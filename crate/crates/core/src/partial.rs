//! Partial k-shapes: labelled skew diagrams grown column block by column
//! block, and the `⊕` sum that glues a rectangle on the right and then lifts
//! columns until the hook bounds hold again.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::{Column, SkewShape};

/// A column of a partial k-shape. Label 1 columns may carry hooks up to `k`,
/// label 2 columns up to `k - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialColumn {
    #[serde(rename = "h")]
    pub height: usize,
    #[serde(rename = "b")]
    pub bottom: usize,
    pub label: u8,
}

impl PartialColumn {
    pub fn top(&self) -> usize {
        self.bottom + self.height
    }

    fn contains_level(&self, level: usize) -> bool {
        self.bottom <= level && level < self.top()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPartial")]
pub struct PartialKShape {
    k: usize,
    columns: Vec<PartialColumn>,
}

#[derive(Deserialize)]
struct RawPartial {
    k: usize,
    columns: Vec<PartialColumn>,
}

impl TryFrom<RawPartial> for PartialKShape {
    type Error = Error;

    fn try_from(raw: RawPartial) -> Result<Self> {
        PartialKShape::new(raw.k, raw.columns)
    }
}

/// Order in which the lifting rules are searched for. Every order runs to a
/// fixpoint; the default is the one used by the bijection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ScanOrder {
    /// Columns right to left, rules 1, 2, 3 at each column.
    #[default]
    RightToLeft,
    /// Columns left to right, rules 1, 2, 3 at each column.
    LeftToRight,
    /// Columns right to left, rules 2, 1, 3 at each column.
    RightToLeftRule2First,
    /// Columns right to left, rules 3, 2, 1 at each column.
    RightToLeftReversedRules,
    /// Rule 1 anywhere (right to left), then rule 2 anywhere, then rule 3.
    RuleMajor,
}

impl ScanOrder {
    pub const ALL: [ScanOrder; 5] = [
        ScanOrder::RightToLeft,
        ScanOrder::LeftToRight,
        ScanOrder::RightToLeftRule2First,
        ScanOrder::RightToLeftReversedRules,
        ScanOrder::RuleMajor,
    ];

    fn rules(self) -> [Rule; 3] {
        match self {
            ScanOrder::RightToLeftRule2First => [Rule::Corner, Rule::Crossing, Rule::Conservation],
            ScanOrder::RightToLeftReversedRules => {
                [Rule::Conservation, Rule::Corner, Rule::Crossing]
            }
            _ => [Rule::Crossing, Rule::Corner, Rule::Conservation],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    /// (1) a corner column whose bottom hook is too large is lifted.
    Crossing,
    /// (2) the columns sharing the bottom row to the left of a label-1
    /// column of another kind are lifted.
    Corner,
    /// (3) a column saturated before the sum gets its bottom hook back to `k`.
    Conservation,
}

/// How often each rule fired during one sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleCounts {
    pub rule1: usize,
    pub rule2: usize,
    pub rule3: usize,
}

const LIFT_LIMIT: usize = 1_000_000;

/// Height `ceil((j + 1) / 2)` of the rectangle glued at step `j`.
pub fn block_height(j: usize) -> usize {
    j / 2 + 1
}

/// Label `t(j)`: 1 for even `j`, 2 for odd `j`.
pub fn block_label(j: usize) -> u8 {
    if j.is_multiple_of(2) {
        1
    } else {
        2
    }
}

/// Largest admissible multiplicity at step `j`: `k - 1 - ceil(j / 2)`.
pub fn max_multiplicity(k: usize, j: usize) -> usize {
    (k - 1).saturating_sub(j.div_ceil(2))
}

impl PartialKShape {
    pub fn empty(k: usize) -> Self {
        PartialKShape {
            k,
            columns: Vec::new(),
        }
    }

    /// Checks labels, the staircase borders and the hook bounds.
    pub fn new(k: usize, columns: Vec<PartialColumn>) -> Result<Self> {
        if k < 3 {
            return Err(Error::Domain(format!(
                "partial k-shapes need k >= 3 (got {k})"
            )));
        }
        if let Some(c) = columns.iter().find(|c| c.label != 1 && c.label != 2) {
            return Err(Error::Domain(format!("label {} is not 1 or 2", c.label)));
        }
        if columns.iter().any(|c| c.height == 0) {
            return Err(Error::Domain("columns must be non-empty".into()));
        }
        if columns.windows(2).any(|w| w[0].height < w[1].height) {
            return Err(Error::Domain("column heights must weakly decrease".into()));
        }
        let s = PartialKShape { k, columns };
        if !s.skew().is_rim_continuous() {
            return Err(Error::Domain("borders are not monotone staircases".into()));
        }
        if let Some(c) = s.first_hook_violation() {
            return Err(Error::Domain(format!(
                "column {c} has a hook over its bound"
            )));
        }
        Ok(s)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn columns(&self) -> &[PartialColumn] {
        &self.columns
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn skew(&self) -> SkewShape {
        SkewShape::from_columns(
            self.columns
                .iter()
                .map(|c| Column {
                    bottom: c.bottom,
                    height: c.height,
                })
                .collect(),
        )
    }

    /// Number of columns from `c` rightwards that contain `level`.
    fn arm(&self, c: usize, level: usize) -> usize {
        self.columns[c..]
            .iter()
            .take_while(|col| col.contains_level(level))
            .count()
    }

    fn hook(&self, c: usize, level: usize) -> usize {
        self.arm(c, level) + (self.columns[c].top() - level - 1)
    }

    fn bottom_hook(&self, c: usize) -> usize {
        self.hook(c, self.columns[c].bottom)
    }

    fn bound(&self, c: usize) -> usize {
        if self.columns[c].label == 1 {
            self.k
        } else {
            self.k - 1
        }
    }

    fn is_corner(&self, c: usize) -> bool {
        c == 0 || !self.columns[c - 1].contains_level(self.columns[c].bottom)
    }

    /// First column of the row in which column `c` is rooted.
    fn row_start(&self, c: usize) -> usize {
        let level = self.columns[c].bottom;
        let mut start = c;
        while start > 0 && self.columns[start - 1].contains_level(level) {
            start -= 1;
        }
        start
    }

    fn is_tracked(&self, c: usize) -> bool {
        let col = &self.columns[c];
        col.label == 1 && (2..self.k).contains(&col.height)
    }

    /// A label-1 column is saturated when the leftmost cell of its root row
    /// has hook exactly `k`.
    pub fn is_column_saturated(&self, c: usize) -> bool {
        let col = &self.columns[c];
        col.label == 1 && self.hook(self.row_start(c), col.bottom) == self.k
    }

    /// Every label-1 column of height `i + 1` is saturated.
    pub fn is_saturated_in(&self, i: usize) -> bool {
        (0..self.columns.len())
            .filter(|&c| self.columns[c].label == 1 && self.columns[c].height == i + 1)
            .all(|c| self.is_column_saturated(c))
    }

    /// Indices `i` in `[k - 2]` at which the shape is not saturated.
    pub fn unsaturated_indices(&self) -> Vec<usize> {
        (1..=self.k.saturating_sub(2))
            .filter(|&i| !self.is_saturated_in(i))
            .collect()
    }

    fn first_hook_violation(&self) -> Option<usize> {
        (0..self.columns.len()).find(|&c| {
            let col = &self.columns[c];
            (col.bottom..col.top()).any(|level| self.hook(c, level) > self.bound(c))
        })
    }

    fn lift(&mut self, c: usize) {
        self.columns[c].bottom += 1;
    }

    /// `s ⊕ ceil((j+1)/2)^z` with the default rule order.
    pub fn oplus(&self, j: usize, z: usize) -> Result<PartialKShape> {
        self.oplus_traced(j, z, ScanOrder::default())
            .map(|(s, _)| s)
    }

    pub fn oplus_traced(
        &self,
        j: usize,
        z: usize,
        order: ScanOrder,
    ) -> Result<(PartialKShape, RuleCounts)> {
        if j == 0 {
            return Err(Error::Domain("sum index j must be positive".into()));
        }
        let min_height = (j + 2).div_ceil(2);
        if let Some(c) = self.columns.iter().find(|c| c.height < min_height) {
            return Err(Error::Precondition(format!(
                "column of height {} is lower than {min_height}",
                c.height
            )));
        }
        let mut counts = RuleCounts::default();
        if z == 0 {
            return Ok((self.clone(), counts));
        }
        let remembered: Vec<bool> = (0..self.columns.len())
            .map(|c| self.is_tracked(c) && self.is_column_saturated(c))
            .chain(std::iter::repeat_n(false, z))
            .collect();
        let level = self.columns.last().map_or(0, |c| c.bottom);
        let mut s = self.clone();
        s.columns.extend(std::iter::repeat_n(
            PartialColumn {
                height: block_height(j),
                bottom: level,
                label: block_label(j),
            },
            z,
        ));

        let mut lifts = 0;
        while let Some(rule) = s.apply_one(order, &remembered)? {
            match rule {
                Rule::Crossing => counts.rule1 += 1,
                Rule::Corner => counts.rule2 += 1,
                Rule::Conservation => counts.rule3 += 1,
            }
            lifts += 1;
            if lifts > LIFT_LIMIT {
                return Err(Error::Internal("lifting did not terminate".into()));
            }
        }
        if !s.skew().is_rim_continuous() {
            return Err(Error::invariant("partial shape borders", s.to_string()));
        }
        if let Some(c) = s.first_hook_violation() {
            return Err(Error::invariant(
                "partial shape hook bound",
                format!("column {c} of {s}"),
            ));
        }
        Ok((s, counts))
    }

    fn apply_one(&mut self, order: ScanOrder, remembered: &[bool]) -> Result<Option<Rule>> {
        let n = self.columns.len();
        let rules = order.rules();
        match order {
            ScanOrder::RuleMajor => {
                for rule in rules {
                    for c in (0..n).rev() {
                        if self.try_rule(rule, c, remembered)? {
                            return Ok(Some(rule));
                        }
                    }
                }
            }
            ScanOrder::LeftToRight => {
                for c in 0..n {
                    for rule in rules {
                        if self.try_rule(rule, c, remembered)? {
                            return Ok(Some(rule));
                        }
                    }
                }
            }
            _ => {
                for c in (0..n).rev() {
                    for rule in rules {
                        if self.try_rule(rule, c, remembered)? {
                            return Ok(Some(rule));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    fn try_rule(&mut self, rule: Rule, c: usize, remembered: &[bool]) -> Result<bool> {
        let col = self.columns[c];
        match rule {
            Rule::Crossing => {
                if self.is_corner(c) && self.bottom_hook(c) > self.bound(c) {
                    self.lift(c);
                    return Ok(true);
                }
            }
            Rule::Corner => {
                if self.is_tracked(c) && c > 0 {
                    let left = self.columns[c - 1];
                    if left.bottom == col.bottom && (left.height != col.height || left.label != 1) {
                        let mut d = c;
                        while d > 0 && self.columns[d - 1].bottom == col.bottom {
                            d -= 1;
                            self.lift(d);
                        }
                        return Ok(true);
                    }
                }
            }
            Rule::Conservation => {
                if remembered[c]
                    && self.is_tracked(c)
                    && self.is_corner(c)
                    && self.bottom_hook(c) < self.k
                {
                    while self.bottom_hook(c) < self.k {
                        let x = c + self.arm(c, col.bottom);
                        if x >= self.columns.len() {
                            return Err(Error::Internal(format!(
                                "no column left to restore the hook of column {c}"
                            )));
                        }
                        let level = self.columns[x].bottom;
                        let mut d = x + 1;
                        while d > 0 && self.columns[d - 1].bottom == level {
                            d -= 1;
                            self.lift(d);
                        }
                    }
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// The unique `z` in `[k - 1 - ceil(j/2)]` making `self ⊕ ceil((j+1)/2)^z`
    /// saturated in `i`.
    pub fn saturating_z(&self, j: usize, i: usize) -> Result<usize> {
        if self.is_saturated_in(i) {
            return Err(Error::Precondition(format!("already saturated in {i}")));
        }
        let mut found = Vec::new();
        for z in 1..=max_multiplicity(self.k, j) {
            if self.oplus(j, z)?.is_saturated_in(i) {
                found.push(z);
            }
        }
        match found.as_slice() {
            [z] => Ok(*z),
            _ => Err(Error::invariant(
                "unique saturating multiplicity",
                format!("j={j}, i={i}, solutions {found:?} for {self}"),
            )),
        }
    }

    /// Top row first; `#` for label 1 cells, `o` for label 2 cells.
    pub fn render(&self) -> String {
        let top = self
            .columns
            .iter()
            .map(PartialColumn::top)
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for level in (0..top).rev() {
            let line: String = self
                .columns
                .iter()
                .map(|c| match (c.contains_level(level), c.label) {
                    (false, _) => ' ',
                    (true, 1) => '#',
                    (true, _) => 'o',
                })
                .collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for PartialKShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}/{}@{}", c.height, c.label, c.bottom)?;
        }
        write!(f, "]")
    }
}
