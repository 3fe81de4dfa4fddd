//! Dense linear algebra over `GF(2)`.
//!
//! Vectors are `Vec<u8>` holding 0/1. Sizes here are small (link components,
//! cells of a handful of tetrahedra), so rows are stored unpacked.

pub type Gf2Vec = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![0; cols]; rows],
        }
    }

    /// Reduces integer entries mod 2.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(2) as u8).collect())
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_rows(rows: Vec<Gf2Vec>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i][j] = v & 1;
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i][j] ^= 1;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i]
    }

    pub fn mul_vec(&self, x: &[u8]) -> Gf2Vec {
        self.data
            .iter()
            .map(|row| row.iter().zip(x).fold(0u8, |acc, (a, b)| acc ^ (a & b)))
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| self.data[i][col] == 1) else {
                continue;
            };
            self.data.swap(row, p);
            let pivot_row = self.data[row].clone();
            for i in 0..self.rows {
                if i != row && self.data[i][col] == 1 {
                    for (x, y) in self.data[i].iter_mut().zip(&pivot_row) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Gf2Vec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u8; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = m.data[r][f];
                }
                v
            })
            .collect()
    }

    /// One solution of `Mx = b` with all free variables zero, if consistent.
    pub fn solve(&self, b: &[u8]) -> Option<Gf2Vec> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Gf2Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.data[i][..self.cols].copy_from_slice(&self.data[i]);
            aug.data[i][self.cols] = b[i] & 1;
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u8; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.data[r][self.cols];
        }
        Some(x)
    }

    /// Every solution of `Mx = b`, sorted lexicographically.
    pub fn all_solutions(&self, b: &[u8]) -> Vec<Gf2Vec> {
        let Some(x0) = self.solve(b) else {
            return Vec::new();
        };
        let basis = self.nullspace();
        assert!(basis.len() < 24, "solution space too large to enumerate");
        let mut out: Vec<Gf2Vec> = (0u32..1 << basis.len())
            .map(|mask| {
                let mut x = x0.clone();
                for (k, v) in basis.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        add_assign(&mut x, v);
                    }
                }
                x
            })
            .collect();
        out.sort();
        out
    }
}

pub fn add_assign(x: &mut [u8], y: &[u8]) {
    for (a, b) in x.iter_mut().zip(y) {
        *a ^= b;
    }
}

pub fn dot(x: &[u8], y: &[u8]) -> u8 {
    x.iter().zip(y).fold(0, |acc, (a, b)| acc ^ (a & b))
}

pub fn is_zero(x: &[u8]) -> bool {
    x.iter().all(|&v| v == 0)
}

/// Parses a string of `0`/`1` characters.
pub fn parse_bits(s: &str) -> Option<Gf2Vec> {
    s.chars()
        .map(|c| match c {
            '0' => Some(0),
            '1' => Some(1),
            _ => None,
        })
        .collect()
}

pub fn format_bits(x: &[u8]) -> String {
    x.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
}
