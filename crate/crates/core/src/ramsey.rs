//! Monochromatic sets for colorings of pairs, and the three-color witness
//! that `[m] x [m]` has a large rectangle seeing at most two colors.
//!
//! Colorings are callables. Nothing here materializes an `m x m` matrix, so
//! sizes in the thousands run in linear memory.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::mix64;

/// A coloring of the unordered pairs of `0..size`. The callable is only ever
/// invoked with `i < j`.
pub struct PairColoring<'a> {
    size: usize,
    colors: usize,
    f: Box<dyn Fn(usize, usize) -> usize + Sync + 'a>,
}

impl<'a> PairColoring<'a> {
    pub fn new(size: usize, colors: usize, f: impl Fn(usize, usize) -> usize + Sync + 'a) -> Self {
        PairColoring {
            size,
            colors,
            f: Box::new(f),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    /// Color of `{i, j}`, `i != j`.
    pub fn color(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        (self.f)(a, b)
    }

    fn checked(&self, i: usize, j: usize) -> Result<usize> {
        let v = self.color(i, j);
        if v >= self.colors {
            return Err(Error::ClassOutOfRange {
                class: v,
                count: self.colors,
            });
        }
        Ok(v)
    }
}

/// Built-in total colorings of the full square `[m] x [m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleKind {
    Constant(usize),
    /// 0 above the diagonal (`i < j`), 1 below, 2 on it.
    Order3,
    /// `(i + j) mod 2`.
    Parity,
    /// Hash of `(seed, i, j)` reduced modulo the color count.
    Random(u64),
    Matrix(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridOracle {
    size: usize,
    colors: usize,
    kind: OracleKind,
}

impl GridOracle {
    pub fn new(size: usize, colors: usize, kind: OracleKind) -> Result<Self> {
        if colors == 0 {
            return Err(Error::InvalidParameter("an oracle needs at least one color".into()));
        }
        match &kind {
            OracleKind::Constant(k) if *k >= colors => {
                return Err(Error::ClassOutOfRange {
                    class: *k,
                    count: colors,
                })
            }
            OracleKind::Order3 if colors < 3 => {
                return Err(Error::InvalidParameter("order3 needs 3 colors".into()))
            }
            OracleKind::Parity if colors < 2 => {
                return Err(Error::InvalidParameter("parity needs 2 colors".into()))
            }
            OracleKind::Matrix(rows) => {
                if rows.len() != size || rows.iter().any(|r| r.len() != size) {
                    return Err(Error::ShapeMismatch(format!(
                        "oracle matrix must be {size} x {size}"
                    )));
                }
                if let Some(&v) = rows.iter().flatten().find(|&&v| v >= colors) {
                    return Err(Error::ClassOutOfRange {
                        class: v,
                        count: colors,
                    });
                }
            }
            _ => {}
        }
        Ok(GridOracle { size, colors, kind })
    }

    /// Resolves a registry name: `constant:<k>`, `order3`, `parity`,
    /// `random:<seed>` or `file:<path>`. `size` is ignored for files, whose
    /// matrix fixes it; the color count of a file is raised to cover its
    /// largest entry.
    pub fn parse(name: &str, size: usize, colors: usize) -> Result<Self> {
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (name, None),
        };
        let bad = |what: &str| Error::Parse(format!("oracle `{name}`: {what}"));
        match (head, arg) {
            ("constant", Some(k)) => {
                let k = k.parse().map_err(|_| bad("expected constant:<k>"))?;
                GridOracle::new(size, colors, OracleKind::Constant(k))
            }
            ("order3", None) => GridOracle::new(size, colors, OracleKind::Order3),
            ("parity", None) => GridOracle::new(size, colors, OracleKind::Parity),
            ("random", Some(s)) => {
                let s = s.parse().map_err(|_| bad("expected random:<seed>"))?;
                GridOracle::new(size, colors, OracleKind::Random(s))
            }
            ("file", Some(p)) => GridOracle::from_file(Path::new(p), colors),
            _ => Err(bad("unknown oracle")),
        }
    }

    /// Reads a JSON matrix of color ids.
    pub fn from_file(path: &Path, colors: usize) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let rows: Vec<Vec<usize>> = serde_json::from_str(&text)?;
        let max = rows.iter().flatten().copied().max().map_or(0, |v| v + 1);
        GridOracle::new(rows.len(), colors.max(max), OracleKind::Matrix(rows))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn kind(&self) -> &OracleKind {
        &self.kind
    }

    pub fn value(&self, i: usize, j: usize) -> usize {
        match &self.kind {
            OracleKind::Constant(k) => *k,
            OracleKind::Order3 => match i.cmp(&j) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Equal => 2,
            },
            OracleKind::Parity => (i + j) % 2,
            OracleKind::Random(seed) => {
                let h = mix64(mix64(seed ^ (i as u64)).wrapping_add(j as u64));
                (h % self.colors as u64) as usize
            }
            OracleKind::Matrix(rows) => rows[i][j],
        }
    }

    /// `f{a, b} = h(a, b)` for `a < b`.
    pub fn upper(&self) -> PairColoring<'_> {
        PairColoring::new(self.size, self.colors, move |a, b| self.value(a, b))
    }

    /// `g{a, b} = h(b, a)` for `a < b`.
    pub fn lower(&self) -> PairColoring<'_> {
        PairColoring::new(self.size, self.colors, move |a, b| self.value(b, a))
    }
}

/// One step of the pivot chain. `color` is the color toward the kept group;
/// the final pivot has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pivot {
    pub vertex: usize,
    pub color: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    #[serde(rename = "A")]
    pub set: Vec<usize>,
    pub color: usize,
    pub pivots: Vec<Pivot>,
    pub guarantee: usize,
}

/// Smallest `t` with `c^t >= m`.
pub fn ceil_log(m: usize, c: usize) -> usize {
    let mut t = 0;
    let mut p: u128 = 1;
    while p < m as u128 {
        p *= c as u128;
        t += 1;
    }
    t
}

/// `ceil(ceil(log_c m) / c)`; for a single color every set is monochromatic
/// and the bound is `m`.
pub fn ramsey_guarantee(m: usize, c: usize) -> usize {
    if c <= 1 {
        return m;
    }
    ceil_log(m, c).div_ceil(c)
}

/// Every pair of `set` has color `color`.
pub fn is_monochromatic(f: &PairColoring<'_>, set: &[usize], color: usize) -> bool {
    set.iter()
        .enumerate()
        .all(|(x, &a)| set[x + 1..].iter().all(|&b| f.color(a, b) == color))
}

/// Pivot-chain extraction of a monochromatic set.
///
/// The pool starts as `0..m`; its least element becomes a pivot, the rest is
/// grouped by color toward it and the largest group (lowest color on ties)
/// becomes the new pool. The pivots recorded with the most frequent color,
/// together with the final pivot, form the result.
pub fn ramsey_extract(f: &PairColoring<'_>) -> Result<Extraction> {
    ramsey_extract_on(f, &(0..f.size()).collect::<Vec<_>>())
}

/// [`ramsey_extract`] restricted to the ascending vertex list `vertices`.
pub fn ramsey_extract_on(f: &PairColoring<'_>, vertices: &[usize]) -> Result<Extraction> {
    let c = f.colors();
    if vertices.len() < 2 || c == 0 {
        return Err(Error::InvalidParameter(format!(
            "extraction needs at least 2 vertices and 1 color (got {} and {c})",
            vertices.len()
        )));
    }
    let mut pool = vertices.to_vec();
    let mut pivots = Vec::new();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); c];
    while let Some((&v, rest)) = pool.split_first() {
        if rest.is_empty() {
            pivots.push(Pivot { vertex: v, color: None });
            break;
        }
        for g in &mut groups {
            g.clear();
        }
        for &w in rest {
            groups[f.checked(v, w)?].push(w);
        }
        // max_by_key keeps the last maximum; scan in reverse for the lowest color
        let (k, _) = groups
            .iter()
            .enumerate()
            .rev()
            .max_by_key(|(_, g)| g.len())
            .expect("at least one color");
        pivots.push(Pivot { vertex: v, color: Some(k) });
        pool = std::mem::take(&mut groups[k]);
    }

    let mut tally = vec![0usize; c];
    for p in &pivots {
        if let Some(k) = p.color {
            tally[k] += 1;
        }
    }
    let (color, _) = tally
        .iter()
        .enumerate()
        .rev()
        .max_by_key(|(_, &n)| n)
        .expect("at least one color");
    let last = pivots.last().expect("nonempty chain").vertex;
    let set: Vec<usize> = pivots
        .iter()
        .filter(|p| p.color == Some(color) || p.vertex == last)
        .map(|p| p.vertex)
        .collect();

    if !is_monochromatic(f, &set, color) {
        return Err(Error::InvariantBreach(format!(
            "extracted set is not monochromatic in color {color}"
        )));
    }
    let guarantee = ramsey_guarantee(vertices.len(), c);
    if set.len() < guarantee {
        return Err(Error::InvariantBreach(format!(
            "extracted set has {} elements, below the guarantee {guarantee}",
            set.len()
        )));
    }
    Ok(Extraction {
        set,
        color,
        pivots,
        guarantee,
    })
}

/// Disjoint `K`, `L` with `h[K x L]` holding at most two colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    #[serde(rename = "L")]
    pub l: Vec<usize>,
    #[serde(rename = "colorSet")]
    pub color_set: Vec<usize>,
    /// Monochromatic set of `h(a, b)`, `a < b`.
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    /// Monochromatic subset of `A` for `h(b, a)`, `a < b`.
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    pub upper_color: usize,
    pub lower_color: usize,
}

/// Exact `h[K x L]`, ascending.
pub fn product_colors(h: &GridOracle, k: &[usize], l: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; h.colors()];
    for &x in k {
        for &y in l {
            seen[h.value(x, y)] = true;
        }
    }
    (0..h.colors()).filter(|&v| seen[v]).collect()
}

/// Extracts `A` for the upper reading of `h`, then `B ⊆ A` for the lower
/// reading, and deals `B` alternately into `K` and `L`. For `x ∈ K`, `y ∈ L`
/// the value `h(x, y)` is the upper color when `x < y` and the lower color
/// otherwise.
pub fn anti_thick_witness(h: &GridOracle) -> Result<WitnessPair> {
    if h.size() < 4 {
        return Err(Error::InvalidParameter(format!(
            "the witness needs m >= 4 (got {})",
            h.size()
        )));
    }
    let first = ramsey_extract(&h.upper())?;
    let second = ramsey_extract_on(&h.lower(), &first.set)?;
    let b = second.set;
    if b.len() < 2 {
        return Err(Error::DegenerateWitness { size: b.len() });
    }
    let k: Vec<usize> = b.iter().copied().step_by(2).collect();
    let l: Vec<usize> = b.iter().copied().skip(1).step_by(2).collect();
    let color_set = product_colors(h, &k, &l);
    let allowed = [first.color, second.color];
    if color_set.len() > 2 || color_set.iter().any(|v| !allowed.contains(v)) {
        return Err(Error::InvariantBreach(format!(
            "h[K x L] = {color_set:?} is not within {{{}, {}}}",
            first.color, second.color
        )));
    }
    Ok(WitnessPair {
        k,
        l,
        color_set,
        a: first.set,
        b,
        upper_color: first.color,
        lower_color: second.color,
    })
}
