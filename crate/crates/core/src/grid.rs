//! Finite grids, cell sets and colorings, and the `(mu, nu)`-thickness
//! oracle.
//!
//! A set `E` of cells of `rows x cols` is `(mu, nu)`-thick when it meets
//! every combinatorial rectangle `M x N` with `|M| = mu` and `|N| = nu`.
//! Rectangles need not be contiguous. When `mu > rows` or `nu > cols` there
//! are no rectangles and every set, including the empty one, is thick.
//!
//! Rows are arbitrary in number; columns are stored as 64-bit row traces, so
//! a grid has at most [`MAX_COLS`] columns.

use serde::{Deserialize, Serialize};

use crate::combin::{bits_of, mask_of, Combinations};
use crate::error::{Error, Result};

/// Largest supported column count.
pub const MAX_COLS: usize = 64;

/// Canonically ordered index set `0..size`, with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSegment {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl GroundSegment {
    pub fn new(size: usize) -> Self {
        GroundSegment { size, labels: None }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        GroundSegment {
            size: labels.len(),
            labels: Some(labels),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(i)).map(String::as_str)
    }

    pub fn check(&self, index: usize) -> Result<()> {
        if index < self.size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                size: self.size,
            })
        }
    }

    /// Sub-segment on the given (sorted, distinct) indices, carrying labels.
    fn select(&self, indices: &[usize]) -> GroundSegment {
        match &self.labels {
            Some(l) => GroundSegment::with_labels(indices.iter().map(|&i| l[i].clone()).collect()),
            None => GroundSegment::new(indices.len()),
        }
    }
}

impl From<usize> for GroundSegment {
    fn from(size: usize) -> Self {
        GroundSegment::new(size)
    }
}

/// Parameters of a thickness query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThickSpec {
    pub mu: usize,
    pub nu: usize,
}

impl ThickSpec {
    pub fn new(mu: usize, nu: usize) -> Self {
        ThickSpec { mu, nu }
    }
}

/// A failing rectangle `M x N` for a thickness query.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RectangleWitness {
    #[serde(rename = "M")]
    pub rows: Vec<usize>,
    #[serde(rename = "N")]
    pub cols: Vec<usize>,
}

/// Verdict of [`is_thick`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Thickness {
    Thick,
    NotThick(RectangleWitness),
}

impl Thickness {
    pub fn is_thick(&self) -> bool {
        matches!(self, Thickness::Thick)
    }

    pub fn witness(&self) -> Option<&RectangleWitness> {
        match self {
            Thickness::Thick => None,
            Thickness::NotThick(w) => Some(w),
        }
    }
}

/// A set of cells of `rows x cols`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    rows: GroundSegment,
    cols: GroundSegment,
    // traces[r] has bit c set iff (r, c) is a member
    traces: Vec<u64>,
}

impl CellSet {
    pub fn empty(rows: impl Into<GroundSegment>, cols: impl Into<GroundSegment>) -> Result<Self> {
        let rows = rows.into();
        let cols = cols.into();
        if cols.size() > MAX_COLS {
            return Err(Error::TooManyColumns {
                cols: cols.size(),
                max: MAX_COLS,
            });
        }
        Ok(CellSet {
            traces: vec![0; rows.size()],
            rows,
            cols,
        })
    }

    pub fn full(rows: impl Into<GroundSegment>, cols: impl Into<GroundSegment>) -> Result<Self> {
        let mut s = Self::empty(rows, cols)?;
        let all = s.col_mask();
        s.traces.iter_mut().for_each(|t| *t = all);
        Ok(s)
    }

    pub fn from_cells(
        rows: impl Into<GroundSegment>,
        cols: impl Into<GroundSegment>,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut s = Self::empty(rows, cols)?;
        for (r, c) in cells {
            s.insert(r, c)?;
        }
        Ok(s)
    }

    /// Builds the set `{(r, c) : pred(r, c)}`.
    pub fn from_fn(rows: usize, cols: usize, pred: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut s = Self::empty(rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                if pred(r, c) {
                    s.traces[r] |= 1 << c;
                }
            }
        }
        Ok(s)
    }

    pub fn rows(&self) -> &GroundSegment {
        &self.rows
    }

    pub fn cols(&self) -> &GroundSegment {
        &self.cols
    }

    fn col_mask(&self) -> u64 {
        if self.cols.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.cols.size()) - 1
        }
    }

    pub fn insert(&mut self, r: usize, c: usize) -> Result<()> {
        self.rows.check(r)?;
        self.cols.check(c)?;
        self.traces[r] |= 1 << c;
        Ok(())
    }

    pub fn remove(&mut self, r: usize, c: usize) -> Result<()> {
        self.rows.check(r)?;
        self.cols.check(c)?;
        self.traces[r] &= !(1 << c);
        Ok(())
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        r < self.rows.size() && c < self.cols.size() && self.traces[r] >> c & 1 == 1
    }

    /// Bit mask of the member columns of row `r`.
    pub fn row_trace(&self, r: usize) -> u64 {
        self.traces[r]
    }

    pub fn len(&self) -> usize {
        self.traces.iter().map(|t| t.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.iter().all(|&t| t == 0)
    }

    /// Members in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.traces
            .iter()
            .enumerate()
            .flat_map(|(r, &t)| bits_of(t).into_iter().map(move |c| (r, c)))
    }

    pub fn complement(&self) -> CellSet {
        let all = self.col_mask();
        CellSet {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            traces: self.traces.iter().map(|t| !t & all).collect(),
        }
    }

    pub fn is_superset_of(&self, other: &CellSet) -> bool {
        self.rows.size() == other.rows.size()
            && self.cols.size() == other.cols.size()
            && self.traces.iter().zip(&other.traces).all(|(a, b)| b & !a == 0)
    }

    pub fn union(&self, other: &CellSet) -> Result<CellSet> {
        if self.rows.size() != other.rows.size() || self.cols.size() != other.cols.size() {
            return Err(Error::ShapeMismatch("union of differently shaped cell sets".into()));
        }
        Ok(CellSet {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            traces: self.traces.iter().zip(&other.traces).map(|(a, b)| a | b).collect(),
        })
    }
}

/// Decides `(mu, nu)`-thickness of `set`, returning the lexicographically
/// least failing rectangle (ordered by `M`, then `N`) when it is not thick.
///
/// A rectangle `M x N` misses the set exactly when every row of `M` has an
/// empty trace on `N`, so only column sets are enumerated: for each `N` the
/// least failing `M` is the first `mu` rows whose trace avoids `N`.
pub fn is_thick(set: &CellSet, spec: ThickSpec) -> Thickness {
    let m = set.rows.size();
    let l = set.cols.size();
    if spec.mu > m || spec.nu > l {
        return Thickness::Thick;
    }
    let least_m: Vec<usize> = (0..spec.mu).collect();
    let mut best: Option<RectangleWitness> = None;
    for cols in Combinations::new(l, spec.nu) {
        let nmask = mask_of(&cols);
        let rows: Vec<usize> = (0..m)
            .filter(|&r| set.traces[r] & nmask == 0)
            .take(spec.mu)
            .collect();
        if rows.len() < spec.mu {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => rows < b.rows,
        };
        if better {
            let done = rows == least_m;
            best = Some(RectangleWitness { rows, cols });
            if done {
                break;
            }
        }
    }
    match best {
        None => Thickness::Thick,
        Some(w) => Thickness::NotThick(w),
    }
}

fn normalize(indices: &[usize], seg: &GroundSegment) -> Result<Vec<usize>> {
    let mut v = indices.to_vec();
    v.sort_unstable();
    v.dedup();
    for &i in &v {
        seg.check(i)?;
    }
    Ok(v)
}

/// `set ∩ (sub_rows x sub_cols)`, reindexed over the sub-segments in
/// ascending index order.
pub fn restrict(set: &CellSet, sub_rows: &[usize], sub_cols: &[usize]) -> Result<CellSet> {
    let rows = normalize(sub_rows, &set.rows)?;
    let cols = normalize(sub_cols, &set.cols)?;
    let mut out = CellSet::empty(set.rows.select(&rows), set.cols.select(&cols))?;
    for (nr, &r) in rows.iter().enumerate() {
        for (nc, &c) in cols.iter().enumerate() {
            if set.contains(r, c) {
                out.traces[nr] |= 1 << nc;
            }
        }
    }
    Ok(out)
}

/// A (possibly partial) assignment of class ids `0..class_count` to cells.
/// Unassigned cells belong to no class. Class cell sets are disjoint because
/// each cell holds at most one id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GridFile", try_from = "GridFile")]
pub struct GridColoring {
    rows: GroundSegment,
    cols: GroundSegment,
    class_count: usize,
    cells: Vec<Option<usize>>,
}

impl GridColoring {
    /// All cells unassigned.
    pub fn new(
        rows: impl Into<GroundSegment>,
        cols: impl Into<GroundSegment>,
        class_count: usize,
    ) -> Result<Self> {
        let rows = rows.into();
        let cols = cols.into();
        if cols.size() > MAX_COLS {
            return Err(Error::TooManyColumns {
                cols: cols.size(),
                max: MAX_COLS,
            });
        }
        Ok(GridColoring {
            cells: vec![None; rows.size() * cols.size()],
            rows,
            cols,
            class_count,
        })
    }

    /// Total coloring `(r, c) -> class(r, c)`.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        class_count: usize,
        class: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut g = Self::new(rows, cols, class_count)?;
        for r in 0..rows {
            for c in 0..cols {
                g.set(r, c, Some(class(r, c)))?;
            }
        }
        Ok(g)
    }

    pub fn rows(&self) -> &GroundSegment {
        &self.rows
    }

    pub fn cols(&self) -> &GroundSegment {
        &self.cols
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn get(&self, r: usize, c: usize) -> Option<usize> {
        self.cells[r * self.cols.size() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, class: Option<usize>) -> Result<()> {
        self.rows.check(r)?;
        self.cols.check(c)?;
        if let Some(k) = class {
            if k >= self.class_count {
                return Err(Error::ClassOutOfRange {
                    class: k,
                    count: self.class_count,
                });
            }
        }
        let idx = r * self.cols.size() + c;
        self.cells[idx] = class;
        Ok(())
    }

    /// First unassigned cell in row-major order, if any.
    pub fn first_unassigned(&self) -> Option<(usize, usize)> {
        let l = self.cols.size();
        self.cells.iter().position(Option::is_none).map(|i| (i / l, i % l))
    }

    pub fn is_total(&self) -> bool {
        self.first_unassigned().is_none()
    }

    pub fn require_total(&self) -> Result<()> {
        match self.first_unassigned() {
            None => Ok(()),
            Some((row, col)) => Err(Error::PartialColoring { row, col }),
        }
    }

    /// Cell set of class `class`.
    pub fn class_cells(&self, class: usize) -> CellSet {
        let mut s = CellSet::empty(self.rows.clone(), self.cols.clone()).expect("columns checked");
        let l = self.cols.size();
        for (i, &k) in self.cells.iter().enumerate() {
            if k == Some(class) {
                s.traces[i / l] |= 1 << (i % l);
            }
        }
        s
    }

    /// Number of cells per class.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_count];
        for k in self.cells.iter().flatten() {
            sizes[*k] += 1;
        }
        sizes
    }

    /// Thickness of every class under `spec`.
    pub fn class_thickness(&self, spec: ThickSpec) -> Vec<Thickness> {
        (0..self.class_count)
            .map(|k| is_thick(&self.class_cells(k), spec))
            .collect()
    }

    /// Restriction to `sub_rows x sub_cols`, reindexed.
    pub fn restrict(&self, sub_rows: &[usize], sub_cols: &[usize]) -> Result<GridColoring> {
        let rows = normalize(sub_rows, &self.rows)?;
        let cols = normalize(sub_cols, &self.cols)?;
        let mut out = GridColoring::new(self.rows.select(&rows), self.cols.select(&cols), self.class_count)?;
        for (nr, &r) in rows.iter().enumerate() {
            for (nc, &c) in cols.iter().enumerate() {
                out.set(nr, nc, self.get(r, c))?;
            }
        }
        Ok(out)
    }

    pub fn to_file(&self) -> GridFile {
        let l = self.cols.size();
        GridFile {
            rows: self.rows.size(),
            cols: l,
            class_count: self.class_count,
            cells: self
                .cells
                .iter()
                .enumerate()
                .map(|(i, k)| [(i / l) as i64, (i % l) as i64, k.map_or(-1, |k| k as i64)])
                .collect(),
        }
    }

    pub fn from_file(file: &GridFile) -> Result<Self> {
        let mut g = GridColoring::new(file.rows, file.cols, file.class_count)?;
        for &[r, c, k] in &file.cells {
            if r < 0 || c < 0 {
                return Err(Error::Parse(format!("negative cell index ({r}, {c})")));
            }
            let class = match k {
                -1 => None,
                k if k >= 0 => Some(k as usize),
                k => return Err(Error::Parse(format!("class id {k} is neither -1 nor a valid id"))),
            };
            g.set(r as usize, c as usize, class)?;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        crate::report::to_canonical_json(&self.to_file())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }
}

/// On-disk form of a [`GridColoring`]; unassigned cells carry class `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GridFile {
    pub rows: usize,
    pub cols: usize,
    pub class_count: usize,
    pub cells: Vec<[i64; 3]>,
}

impl From<GridColoring> for GridFile {
    fn from(g: GridColoring) -> Self {
        g.to_file()
    }
}

impl TryFrom<GridFile> for GridColoring {
    type Error = Error;
    fn try_from(f: GridFile) -> Result<Self> {
        GridColoring::from_file(&f)
    }
}

/// A partition of `0..target_cols` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockMap {
    target_cols: usize,
    blocks: Vec<Vec<usize>>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl BlockMap {
    pub fn new(target_cols: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; target_cols];
        let mut blocks = blocks;
        for (b, block) in blocks.iter_mut().enumerate() {
            block.sort_unstable();
            if block.is_empty() {
                return Err(Error::InvalidBlockMap(format!("block {b} is empty")));
            }
            for &j in block.iter() {
                if j >= target_cols {
                    return Err(Error::InvalidBlockMap(format!(
                        "column {j} of block {b} is outside 0..{target_cols}"
                    )));
                }
                if block_of[j] != usize::MAX {
                    return Err(Error::InvalidBlockMap(format!(
                        "column {j} lies in blocks {} and {b}",
                        block_of[j]
                    )));
                }
                block_of[j] = b;
            }
        }
        if let Some(j) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidBlockMap(format!("column {j} is in no block")));
        }
        Ok(BlockMap {
            target_cols,
            blocks,
            block_of,
        })
    }

    /// Consecutive blocks of the given sizes.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let mut blocks = Vec::with_capacity(sizes.len());
        for &s in sizes {
            blocks.push((start..start + s).collect());
            start += s;
        }
        Self::new(start, blocks)
    }

    pub fn uniform(count: usize, size: usize) -> Result<Self> {
        Self::from_sizes(&vec![size; count])
    }

    pub fn target_cols(&self) -> usize {
        self.target_cols
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, col: usize) -> usize {
        self.block_of[col]
    }

    /// Column width guaranteeing that a lifted `(mu, nu)`-thick class stays
    /// thick: any column set of this size meets at least `nu` blocks. It is
    /// one more than the combined size of the `nu - 1` largest blocks, which
    /// for uniform blocks of size `s` is `s * (nu - 1) + 1`.
    pub fn graded_width(&self, nu: usize) -> usize {
        if nu == 0 {
            return 0;
        }
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes.iter().take(nu - 1).sum::<usize>() + 1
    }
}

/// Lifts a total coloring of `m x c` to `m x l` through a block map with `c`
/// blocks: cell `(a, j)` takes the class of `(a, b)` where `j` lies in
/// block `b`.
pub fn lift_by_cofinality(source: &GridColoring, blocks: &BlockMap) -> Result<GridColoring> {
    let c = source.cols().size();
    if blocks.blocks().len() != c {
        return Err(Error::BlockCountMismatch {
            expected: c,
            found: blocks.blocks().len(),
        });
    }
    source.require_total()?;
    let m = source.rows().size();
    let mut out = GridColoring::new(source.rows().clone(), blocks.target_cols(), source.class_count())?;
    for a in 0..m {
        for j in 0..blocks.target_cols() {
            out.set(a, j, source.get(a, blocks.block_of(j)))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn checkerboard() -> CellSet {
        CellSet::from_fn(4, 4, |i, j| (i + j) % 2 == 0).unwrap()
    }

    #[test]
    fn full_set_is_thick() {
        let full = CellSet::full(3, 3).unwrap();
        assert!(is_thick(&full, ThickSpec::new(1, 1)).is_thick());
    }

    #[test]
    fn empty_set_is_vacuously_thick_for_oversized_queries() {
        let empty = CellSet::empty(3, 3).unwrap();
        assert!(is_thick(&empty, ThickSpec::new(4, 1)).is_thick());
        assert!(is_thick(&empty, ThickSpec::new(1, 4)).is_thick());
        assert!(!is_thick(&empty, ThickSpec::new(3, 3)).is_thick());
    }

    #[test]
    fn zero_sized_rectangles_always_miss() {
        let full = CellSet::full(2, 2).unwrap();
        let t = is_thick(&full, ThickSpec::new(0, 1));
        assert_eq!(
            t.witness(),
            Some(&RectangleWitness { rows: vec![], cols: vec![0] })
        );
    }

    #[test]
    fn checkerboard_fails_with_least_witness() {
        let t = is_thick(&checkerboard(), ThickSpec::new(2, 2));
        assert_eq!(
            t,
            Thickness::NotThick(RectangleWitness {
                rows: vec![0, 2],
                cols: vec![1, 3]
            })
        );
    }

    #[test]
    fn restrict_examples() {
        let full = CellSet::full(3, 3).unwrap();
        assert_eq!(restrict(&full, &[0, 1], &[2]).unwrap(), CellSet::full(2, 1).unwrap());
        let empty = CellSet::empty(3, 3).unwrap();
        assert!(restrict(&empty, &[2, 0], &[1]).unwrap().is_empty());
        let r = restrict(&checkerboard(), &[0, 2], &[1, 3]).unwrap();
        assert_eq!(r, CellSet::empty(2, 2).unwrap());
        assert_eq!(
            restrict(&full, &[3], &[0]),
            Err(Error::IndexOutOfRange { index: 3, size: 3 })
        );
    }

    #[test]
    fn lift_example() {
        let h = GridColoring::from_fn(2, 2, 2, |r, c| usize::from(r != c)).unwrap();
        let blocks = BlockMap::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let lifted = lift_by_cofinality(&h, &blocks).unwrap();
        let class0: Vec<_> = lifted.class_cells(0).cells().collect();
        assert_eq!(class0, vec![(0, 0), (0, 1), (1, 2)]);
        assert_eq!(lifted.class_count(), 2);
        assert!(lifted.is_total());
    }

    #[test]
    fn lift_single_class_and_identity() {
        let h = GridColoring::from_fn(3, 2, 1, |_, _| 0).unwrap();
        let lifted = lift_by_cofinality(&h, &BlockMap::from_sizes(&[2, 3]).unwrap()).unwrap();
        assert_eq!(lifted.class_cells(0), CellSet::full(3, 5).unwrap());

        let h = GridColoring::from_fn(3, 3, 3, |r, c| (r * 2 + c) % 3).unwrap();
        let id = BlockMap::uniform(3, 1).unwrap();
        assert_eq!(lift_by_cofinality(&h, &id).unwrap(), h);
    }

    #[test]
    fn lift_rejects_mismatch_and_partial() {
        let h = GridColoring::from_fn(2, 2, 1, |_, _| 0).unwrap();
        assert_eq!(
            lift_by_cofinality(&h, &BlockMap::uniform(3, 1).unwrap()),
            Err(Error::BlockCountMismatch { expected: 2, found: 3 })
        );
        let mut p = h.clone();
        p.set(1, 0, None).unwrap();
        assert_eq!(
            lift_by_cofinality(&p, &BlockMap::uniform(2, 1).unwrap()),
            Err(Error::PartialColoring { row: 1, col: 0 })
        );
    }

    #[test]
    fn block_map_validation() {
        assert!(BlockMap::new(3, vec![vec![0], vec![]]).is_err());
        assert!(BlockMap::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(BlockMap::new(3, vec![vec![0, 1]]).is_err());
        assert_eq!(BlockMap::from_sizes(&[3, 1]).unwrap().graded_width(2), 4);
        assert_eq!(BlockMap::uniform(4, 2).unwrap().graded_width(3), 5);
    }

    #[test]
    fn unassigned_cells_belong_to_no_class() {
        let mut g = GridColoring::new(2, 2, 2).unwrap();
        g.set(0, 0, Some(1)).unwrap();
        assert!(!g.is_total());
        assert_eq!(g.class_sizes(), vec![0, 1]);
        assert_eq!(g.set(0, 1, Some(2)), Err(Error::ClassOutOfRange { class: 2, count: 2 }));
    }

    #[test]
    fn json_round_trip_with_unassigned() {
        let mut g = GridColoring::from_fn(2, 3, 2, |r, c| (r + c) % 2).unwrap();
        g.set(1, 1, None).unwrap();
        let text = g.to_json();
        assert!(text.contains("\"classCount\""));
        assert!(text.contains("-1"));
        assert_eq!(GridColoring::from_json(&text).unwrap(), g);
    }
}
