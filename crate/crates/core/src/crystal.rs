//! Semistandard tableaux as elements of the `gl_inf` crystal.
//!
//! Kashiwara operators act through the signature rule on the column reading
//! word (each column bottom to top, columns left to right). In that word an
//! `i + 1` opens a bracket and an `i` closes one; after cancelling matched
//! pairs the word reduces to `i^phi (i+1)^eps`. Raising turns the leftmost
//! unmatched `i + 1` into `i`, lowering turns the rightmost unmatched `i`
//! into `i + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Basis, Partition, WeightVector};
use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

/// `(row, column)` of a box.
type Cell = (usize, usize);

impl Tableau {
    /// Validates shape and semistandardness. Entries are positive integers.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let rows: Vec<Vec<usize>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let shape = Partition::new(rows.iter().map(Vec::len).collect())
            .map_err(|_| Error::InvalidTableau("row lengths are not weakly decreasing".into()))?;
        if rows.iter().flatten().any(|&e| e == 0) {
            return Err(Error::InvalidTableau("entries must be positive".into()));
        }
        let t = Tableau { shape, rows };
        if !t.is_semistandard() {
            return Err(Error::InvalidTableau(format!("{t} is not semistandard")));
        }
        Ok(t)
    }

    pub fn empty() -> Self {
        Tableau { shape: Partition::empty(), rows: Vec::new() }
    }

    /// The highest-weight tableau of `shape`: row `r` filled with `r`.
    pub fn highest_weight(shape: &Partition) -> Self {
        let rows = shape
            .parts()
            .iter()
            .enumerate()
            .map(|(r, &len)| vec![r + 1; len])
            .collect();
        Tableau { shape: shape.clone(), rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn max_entry(&self) -> usize {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().flatten().copied()
    }

    fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| below > above));
        rows_ok && cols_ok
    }

    /// Cell positions `(row, col)` in column reading order.
    fn reading_positions(&self) -> Vec<(usize, usize)> {
        let width = self.shape.part(0);
        let mut out = Vec::with_capacity(self.shape.size());
        for c in 0..width {
            let height = self.rows.iter().take_while(|r| r.len() > c).count();
            for r in (0..height).rev() {
                out.push((r, c));
            }
        }
        out
    }

    /// Column reading word.
    pub fn reading_word(&self) -> Vec<usize> {
        self.reading_positions().into_iter().map(|(r, c)| self.rows[r][c]).collect()
    }

    /// Unmatched `i` positions (left to right) and unmatched `i + 1` positions
    /// (left to right) after bracket cancellation.
    fn signature(&self, i: usize) -> (Vec<Cell>, Vec<Cell>) {
        let mut open = Vec::new();
        let mut unmatched_i = Vec::new();
        for (r, c) in self.reading_positions() {
            let e = self.rows[r][c];
            if e == i + 1 {
                open.push((r, c));
            } else if e == i && open.pop().is_none() {
                unmatched_i.push((r, c));
            }
        }
        (unmatched_i, open)
    }

    /// Kashiwara raising operator, `None` when `eps_i(T) = 0`.
    pub fn raise(&self, i: usize) -> Option<Tableau> {
        if i == 0 {
            return None;
        }
        let (_, unmatched_up) = self.signature(i);
        let &(r, c) = unmatched_up.first()?;
        let mut out = self.clone();
        out.rows[r][c] = i;
        Some(out)
    }

    /// Kashiwara lowering operator, `None` when `phi_i(T) = 0`.
    pub fn lower(&self, i: usize) -> Option<Tableau> {
        if i == 0 {
            return None;
        }
        let (unmatched_down, _) = self.signature(i);
        let &(r, c) = unmatched_down.last()?;
        let mut out = self.clone();
        out.rows[r][c] = i + 1;
        Some(out)
    }

    /// `eps_i(T)`: how many times `raise(i)` succeeds in a row.
    pub fn epsilon_string(&self, i: usize) -> usize {
        let mut count = 0;
        let mut current = self.raise(i);
        while let Some(t) = current {
            count += 1;
            current = t.raise(i);
        }
        count
    }

    /// `phi_i(T)`: how many times `lower(i)` succeeds in a row.
    pub fn phi_string(&self, i: usize) -> usize {
        let mut count = 0;
        let mut current = self.lower(i);
        while let Some(t) = current {
            count += 1;
            current = t.lower(i);
        }
        count
    }

    /// `(phi_i, eps_i)` read off the reduced signature in one pass.
    pub fn string_lengths(&self, i: usize) -> (usize, usize) {
        if i == 0 {
            return (0, 0);
        }
        let (down, up) = self.signature(i);
        (down.len(), up.len())
    }

    /// Content vector in the epsilon basis.
    pub fn weight(&self) -> WeightVector {
        let mut w = WeightVector::zero(Basis::Epsilon);
        for e in self.entries() {
            w.add_at(e, 1);
        }
        w
    }

    /// `eps(T) = sum_i eps_i(T) w_i`, in omega coordinates.
    pub fn epsilon_vector(&self) -> WeightVector {
        let top = self.max_entry();
        WeightVector::from_dense(
            Basis::Omega,
            (1..top).map(|i| self.string_lengths(i).1 as i64),
        )
    }

    /// `phi(T) = sum_i phi_i(T) w_i`, in omega coordinates.
    pub fn phi_vector(&self) -> WeightVector {
        let top = self.max_entry();
        WeightVector::from_dense(
            Basis::Omega,
            (1..top).map(|i| self.string_lengths(i).0 as i64),
        )
    }
}

impl TryFrom<Vec<Vec<usize>>> for Tableau {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Tableau::new(rows)
    }
}

impl From<Tableau> for Vec<Vec<usize>> {
    fn from(t: Tableau) -> Self {
        t.rows
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", cells.join(","))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau{self}")
    }
}

/// All semistandard tableaux of `shape` with entries in `1..=max_entry`,
/// lexicographic in the row-major reading (top row first).
pub fn enumerate_sst(shape: &Partition, max_entry: usize) -> Vec<Tableau> {
    let lens = shape.parts();
    let heights: Vec<usize> = (0..shape.part(0))
        .map(|c| lens.iter().take_while(|&&l| l > c).count())
        .collect();
    let cells: Vec<(usize, usize)> = lens
        .iter()
        .enumerate()
        .flat_map(|(r, &l)| (0..l).map(move |c| (r, c)))
        .collect();

    let mut rows: Vec<Vec<usize>> = lens.iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();

    fn fill(
        idx: usize,
        cells: &[(usize, usize)],
        heights: &[usize],
        max_entry: usize,
        rows: &mut Vec<Vec<usize>>,
        shape: &Partition,
        out: &mut Vec<Tableau>,
    ) {
        let Some(&(r, c)) = cells.get(idx) else {
            out.push(Tableau { shape: shape.clone(), rows: rows.clone() });
            return;
        };
        let left = if c > 0 { rows[r][c - 1] } else { 1 };
        let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        let lo = left.max(above);
        // leave room for the strictly increasing cells below in this column
        let below = heights[c] - 1 - r;
        let Some(hi) = max_entry.checked_sub(below) else { return };
        for v in lo..=hi {
            rows[r][c] = v;
            fill(idx + 1, cells, heights, max_entry, rows, shape, out);
        }
    }

    fill(0, &cells, &heights, max_entry, &mut rows, shape, &mut out);
    out
}
