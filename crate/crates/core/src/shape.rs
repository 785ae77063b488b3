//! Partitions, hook lengths, k-boundaries and the statistics of irreducible
//! k-shapes.
//!
//! Rows are indexed from the bottom (row 0 is the longest row) and columns
//! from the left, both 0-based. A partition is stored as its row lengths,
//! bottom row first.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct Partition {
    parts: Vec<usize>,
}

#[derive(Deserialize)]
struct RawPartition {
    parts: Vec<usize>,
}

impl TryFrom<RawPartition> for Partition {
    type Error = Error;

    fn try_from(raw: RawPartition) -> Result<Self> {
        Partition::new(raw.parts)
    }
}

impl Partition {
    /// Builds a partition from row lengths given bottom row first.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds the partition whose column heights (left to right) are `heights`.
    /// Zero heights are ignored.
    pub fn from_column_heights(heights: &[usize]) -> Result<Self> {
        if heights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "column heights must be weakly decreasing: {heights:?}"
            )));
        }
        Ok(Partition {
            parts: conjugate(heights),
        })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of columns.
    pub fn width(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Column heights, left to right.
    pub fn conjugate(&self) -> Vec<usize> {
        conjugate(&self.parts)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row < self.parts.len() && cell.col < self.parts[cell.row]
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| (0..len).map(move |col| Cell { row, col }))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn conjugate(parts: &[usize]) -> Vec<usize> {
    let width = parts.first().copied().unwrap_or(0);
    (0..width)
        .map(|col| parts.iter().take_while(|&&p| p > col).count())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// Hook length of `cell` in the Ferrers diagram of `p`.
pub fn hook_length(p: &Partition, cell: Cell) -> Result<usize> {
    if !p.contains(cell) {
        return Err(Error::Domain(format!(
            "cell (row {}, col {}) is not in {p}",
            cell.row, cell.col
        )));
    }
    let arm = p.parts[cell.row] - cell.col;
    let leg = p.conjugate()[cell.col] - cell.row - 1;
    Ok(arm + leg)
}

/// One column of a skew diagram: the cells at levels `bottom..bottom + height`.
/// A zero height marks a column with no cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Column {
    pub bottom: usize,
    pub height: usize,
}

impl Column {
    pub fn top(&self) -> usize {
        self.bottom + self.height
    }

    pub fn contains_level(&self, level: usize) -> bool {
        self.bottom <= level && level < self.top()
    }
}

/// A step of the lower border of a skew diagram, walked from the top left to
/// the bottom right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RimStep {
    /// The edge under the bottom cell of column `col`, at height `level`.
    Horizontal { col: usize, level: usize },
    /// The unit edge on the vertical line `x`, spanning `level..level + 1`.
    Vertical { x: usize, level: usize },
}

/// Skew diagram stored column by column, left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    columns: Vec<Column>,
}

impl SkewShape {
    pub fn from_columns(columns: Vec<Column>) -> Self {
        SkewShape { columns }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn num_cells(&self) -> usize {
        self.columns.iter().map(|c| c.height).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.num_cells() == 0
    }

    fn max_top(&self) -> usize {
        self.columns.iter().map(Column::top).max().unwrap_or(0)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.columns
            .get(cell.col)
            .is_some_and(|c| c.contains_level(cell.row))
    }

    /// Column shape: heights left to right (zero for empty columns).
    pub fn cs(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.height).collect()
    }

    /// Row shape: row lengths bottom to top (zero for empty rows).
    pub fn rs(&self) -> Vec<usize> {
        (0..self.max_top())
            .map(|level| self.row_len(level))
            .collect()
    }

    pub fn row_len(&self, level: usize) -> usize {
        self.columns
            .iter()
            .filter(|c| c.contains_level(level))
            .count()
    }

    /// Hook length of a cell counted inside the diagram itself.
    pub fn hook(&self, cell: Cell) -> Option<usize> {
        if !self.contains(cell) {
            return None;
        }
        let arm = self.columns[cell.col..]
            .iter()
            .take_while(|c| c.contains_level(cell.row))
            .count();
        let leg = self.columns[cell.col].top() - cell.row - 1;
        Some(arm + leg)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(col, c)| (c.bottom..c.top()).map(move |row| Cell { row, col }))
    }

    /// True when the lower border is a single connected lattice path: every
    /// column after the first non-empty one is non-empty, bottoms and tops
    /// descend weakly to the right, and neighbouring columns touch.
    pub fn is_rim_continuous(&self) -> bool {
        let first = match self.columns.iter().position(|c| c.height > 0) {
            Some(i) => i,
            None => return true,
        };
        let cols = &self.columns[first..];
        if cols.iter().any(|c| c.height == 0) {
            return false;
        }
        cols.windows(2).all(|w| {
            w[0].bottom >= w[1].bottom && w[0].top() >= w[1].top() && w[0].bottom <= w[1].top()
        })
    }

    /// The lower border (the k-rim when `self` is a k-boundary).
    pub fn rim(&self) -> Vec<RimStep> {
        let mut steps = Vec::new();
        let cols: Vec<(usize, &Column)> = self
            .columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.height > 0)
            .collect();
        for (idx, &(col, c)) in cols.iter().enumerate() {
            steps.push(RimStep::Horizontal {
                col,
                level: c.bottom,
            });
            if let Some(&(next_col, next)) = cols.get(idx + 1) {
                for level in (next.bottom..c.bottom).rev() {
                    steps.push(RimStep::Vertical { x: next_col, level });
                }
            }
        }
        steps
    }
}

/// The cells of `p` whose hook length is at most `k`.
pub fn k_boundary(p: &Partition, k: usize) -> SkewShape {
    let heights = p.conjugate();
    let columns = heights
        .iter()
        .enumerate()
        .map(|(col, &top)| {
            // hooks strictly decrease going up a column
            let mut bottom = top;
            while bottom > 0 {
                let row = bottom - 1;
                let hook = (p.parts[row] - col) + (top - row - 1);
                if hook > k {
                    break;
                }
                bottom = row;
            }
            Column {
                bottom,
                height: top - bottom,
            }
        })
        .collect();
    SkewShape { columns }
}

/// Fills in the cells beneath the columns and left of the rows of `s`.
pub fn canonical_partition(s: &SkewShape) -> Result<Partition> {
    if !s.is_rim_continuous() {
        return Err(Error::Precondition(
            "canonical partition needs a continuous lower border".into(),
        ));
    }
    let first = s.columns.iter().position(|c| c.height > 0);
    let Some(first) = first else {
        return Ok(Partition::empty());
    };
    let lead_top = s.columns[first].top();
    let heights: Vec<usize> = (0..first)
        .map(|_| lead_top)
        .chain(s.columns[first..].iter().map(Column::top))
        .collect();
    Partition::from_column_heights(&heights)
}

/// Whether `rs^k(p)` and `cs^k(p)`, indexed over every row and column of `p`,
/// are both partitions.
pub fn is_k_shape(p: &Partition, k: usize) -> bool {
    let boundary = k_boundary(p, k);
    let weakly_decreasing = |v: &[usize]| v.windows(2).all(|w| w[0] >= w[1]);
    let rs: Vec<usize> = (0..p.len()).map(|r| boundary.row_len(r)).collect();
    weakly_decreasing(&rs) && weakly_decreasing(&boundary.cs())
}

/// Cells of `H_u(p) ∩ V_v(p)` together with the number of k-rim horizontal
/// steps attributed to the class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CellClass {
    pub cells: Vec<Cell>,
    pub horizontal_steps: usize,
}

/// Groups the cells of the k-boundary by (length of their row, height of
/// their column). A rim horizontal step belongs to the class of the column
/// bottom cell sitting on it.
pub fn cell_classes(p: &Partition, k: usize) -> Result<BTreeMap<(usize, usize), CellClass>> {
    if !is_k_shape(p, k) {
        return Err(Error::Precondition(format!("{p} is not a {k}-shape")));
    }
    let boundary = k_boundary(p, k);
    let rs = boundary.rs();
    let mut classes: BTreeMap<(usize, usize), CellClass> = BTreeMap::new();
    for (col, c) in boundary.columns.iter().enumerate() {
        for row in c.bottom..c.top() {
            let class = classes.entry((rs[row], c.height)).or_default();
            class.cells.push(Cell { row, col });
            if row == c.bottom {
                class.horizontal_steps += 1;
            }
        }
    }
    Ok(classes)
}

fn steps_in(classes: &BTreeMap<(usize, usize), CellClass>, u: usize, v: usize) -> usize {
    classes.get(&(u, v)).map_or(0, |c| c.horizontal_steps)
}

/// A k-shape is irreducible when, for every `i` in `1..=k`, the classes
/// `(i, k - i)` and `(i, k + 1 - i)` hold at most `i - 1` rim horizontal steps.
pub fn is_irreducible(p: &Partition, k: usize) -> Result<bool> {
    let classes = cell_classes(p, k)?;
    Ok(irreducible_from_classes(&classes, k))
}

fn irreducible_from_classes(classes: &BTreeMap<(usize, usize), CellClass>, k: usize) -> bool {
    (1..=k).all(|i| {
        [k - i, k + 1 - i]
            .into_iter()
            .filter(|&v| v >= 1)
            .all(|v| steps_in(classes, i, v) < i)
    })
}

/// Statistics of an irreducible k-shape. Vectors are stored 0-based: `x[0]`
/// is `x_1`, `z[0]` is `z_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeStats {
    pub k: usize,
    pub fr_vector: Vec<u8>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

impl ShapeStats {
    /// `z_j` for 1-based `j`.
    pub fn z_at(&self, j: usize) -> usize {
        self.z[j - 1]
    }

    pub fn fr(&self) -> usize {
        self.fr_vector.iter().map(|&b| b as usize).sum()
    }
}

pub fn shape_stats(p: &Partition, k: usize) -> Result<ShapeStats> {
    if k < 3 {
        return Err(Error::Precondition(format!(
            "shape statistics need k >= 3 (got {k})"
        )));
    }
    let classes = cell_classes(p, k)?;
    if !irreducible_from_classes(&classes, k) {
        return Err(Error::Precondition(format!(
            "{p} is not an irreducible {k}-shape"
        )));
    }
    let sites = 1..=k - 2;
    let x: Vec<usize> = sites
        .clone()
        .map(|i| steps_in(&classes, k - i, i + 1))
        .collect();
    let y: Vec<usize> = sites
        .clone()
        .map(|i| (1..=k - i).map(|u| steps_in(&classes, u, i)).sum())
        .collect();
    let fr_vector = sites
        .map(|i| {
            let empty = classes
                .get(&(k - i, i + 1))
                .is_none_or(|c| c.cells.is_empty());
            u8::from(empty)
        })
        .collect();
    let z = x.iter().zip(&y).flat_map(|(&xi, &yi)| [yi, xi]).collect();
    Ok(ShapeStats {
        k,
        fr_vector,
        x,
        y,
        z,
    })
}

/// ASCII Ferrers diagram, top row first, each cell printed as `[h]` with its
/// hook length. With `k` given, cells outside the k-boundary are left blank.
pub fn render_hooks(p: &Partition, k: Option<usize>) -> String {
    let heights = p.conjugate();
    let hook = |row: usize, col: usize| (p.parts[row] - col) + (heights[col] - row - 1);
    let width = p
        .cells()
        .map(|c| hook(c.row, c.col).to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in (0..p.len()).rev() {
        for col in 0..p.parts[row] {
            let h = hook(row, col);
            if k.is_some_and(|k| h > k) {
                out.push_str(&" ".repeat(width + 2));
            } else {
                out.push_str(&format!("[{h:>width$}]"));
            }
        }
        let trimmed = out.trim_end().len();
        out.truncate(trimmed);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Hooks computed from the definition: cells to the right plus cells above.
    fn brute_hook(p: &Partition, cell: Cell) -> usize {
        let right = (cell.col..)
            .take_while(|&c| p.contains(Cell::new(cell.row, c)))
            .count();
        let above = (cell.row + 1..)
            .take_while(|&r| p.contains(Cell::new(r, cell.col)))
            .count();
        right + above
    }

    #[test]
    fn hook_lengths() {
        let p = part(&[4, 2, 2, 1]);
        assert_eq!(hook_length(&p, Cell::new(0, 0)).unwrap(), 7);
        assert_eq!(hook_length(&p, Cell::new(0, 1)).unwrap(), 5);
        assert_eq!(hook_length(&part(&[1]), Cell::new(0, 0)).unwrap(), 1);
        for cell in p.cells() {
            assert_eq!(hook_length(&p, cell).unwrap(), brute_hook(&p, cell));
        }
        assert!(matches!(
            hook_length(&p, Cell::new(1, 2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        let err = serde_json::from_str::<Partition>(r#"{"parts":[1,3]}"#);
        assert!(err.is_err());
        let ok: Partition = serde_json::from_str(r#"{"parts":[]}"#).unwrap();
        assert!(ok.is_empty());
    }

    #[test]
    fn boundary_profiles() {
        let p = part(&[4, 2, 2, 1]);
        let b2 = k_boundary(&p, 2);
        assert_eq!(b2.rs(), vec![2, 1, 1, 1]);
        assert_eq!(b2.cs(), vec![1, 2, 1, 1]);
        let b5 = k_boundary(&p, 5);
        assert_eq!(b5.rs(), vec![3, 2, 2, 1]);
        assert_eq!(b5.cs(), vec![3, 3, 1, 1]);
        assert!(k_boundary(&Partition::empty(), 4).is_empty());
    }

    #[test]
    fn canonical_partition_examples() {
        let p = part(&[4, 2, 2, 1]);
        let b2 = k_boundary(&p, 2);
        assert!(b2.is_rim_continuous());
        assert_eq!(canonical_partition(&b2).unwrap(), p);
        assert_eq!(
            canonical_partition(&SkewShape::default()).unwrap(),
            Partition::empty()
        );
        let column = SkewShape::from_columns(vec![Column {
            bottom: 0,
            height: 2,
        }]);
        assert_eq!(canonical_partition(&column).unwrap(), part(&[1, 1]));
        // (4,1) at k = 2 keeps cells in columns 0, 2, 3 only
        let gap = k_boundary(&part(&[4, 1]), 2);
        assert!(!gap.is_rim_continuous());
        assert!(matches!(
            canonical_partition(&gap),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn k_shape_examples() {
        let p = part(&[4, 2, 2, 1]);
        assert!(!is_k_shape(&p, 2));
        assert!(is_k_shape(&p, 5));
        assert!(is_k_shape(&p, 4));
        assert!(is_k_shape(&Partition::empty(), 3));
        // rs and cs are partitions once the empty column is dropped, but the
        // rim is broken
        assert!(!is_k_shape(&part(&[4, 1]), 2));
    }

    #[test]
    fn classes_of_worked_example() {
        let p = part(&[4, 2, 2, 1]);
        let classes = cell_classes(&p, 5).unwrap();
        assert_eq!(classes[&(2, 3)].horizontal_steps, 1);
        assert_eq!(classes[&(3, 3)].horizontal_steps, 1);
        assert!(classes.keys().all(|&(u, v)| u + v <= 6));
        assert!(cell_classes(&Partition::empty(), 3).unwrap().is_empty());
        assert!(cell_classes(&p, 2).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&part(&[4, 2, 2, 1]), 5).unwrap());
        assert!(is_irreducible(&Partition::empty(), 3).unwrap());
        assert!(is_irreducible(&part(&[2, 1]), 3).unwrap());
        // (3) puts three steps in H_3 ∩ V_1
        assert!(!is_irreducible(&part(&[3]), 3).unwrap());
        assert!(is_irreducible(&part(&[4, 2, 2, 1]), 2).is_err());
    }

    #[test]
    fn stats_of_worked_example() {
        let s = shape_stats(&part(&[4, 2, 2, 1]), 5).unwrap();
        assert_eq!(s.fr_vector, vec![1, 0, 1]);
        assert_eq!(s.z, vec![2, 0, 0, 1, 1, 0]);
        let e = shape_stats(&Partition::empty(), 4).unwrap();
        assert_eq!(e.z, vec![0; 4]);
        assert_eq!(e.fr_vector, vec![1, 1]);
        assert!(shape_stats(&part(&[3]), 3).is_err());
    }

    #[test]
    fn rim_counts_columns() {
        let b = k_boundary(&part(&[4, 2, 2, 1]), 5);
        let horizontal = b
            .rim()
            .iter()
            .filter(|s| matches!(s, RimStep::Horizontal { .. }))
            .count();
        assert_eq!(horizontal, 4);
    }

    #[test]
    fn renders_hooks() {
        let text = render_hooks(&part(&[4, 2, 2, 1]), None);
        assert_eq!(text, "[1]\n[3][1]\n[4][2]\n[7][5][2][1]\n");
        let text = render_hooks(&part(&[4, 2, 2, 1]), Some(2));
        assert_eq!(text, "[1]\n   [1]\n   [2]\n      [2][1]\n");
    }
}
