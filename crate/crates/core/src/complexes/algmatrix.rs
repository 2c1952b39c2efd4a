use crate::algebra::{Algebra, Element};
use crate::field::Field;
use crate::linalg::SparseVec;

/// Dense matrix of algebra elements, used for maps between sums of
/// indecomposable projectives. Entry `(r, c)` maps summand `r` of the source
/// to summand `c` of the target by right multiplication, so "f then g" is
/// the product `f · g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<Element<F>>,
}

impl<F: Field> AlgMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        AlgMatrix {
            rows,
            cols,
            entries: vec![SparseVec::new(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Element<F> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Element<F>) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn add_to(&mut self, r: usize, c: usize, x: &Element<F>) {
        let k = r * self.cols + c;
        self.entries[k] = self.entries[k].add(x);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, alg: &Algebra<F>, other: &AlgMatrix<F>) -> AlgMatrix<F> {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in algebra matrix product"
        );
        let mut out = AlgMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(r, k);
                if x.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let y = other.get(k, c);
                    if !y.is_zero() {
                        let p = alg.multiply(x, y);
                        out.add_to(r, c, &p);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &AlgMatrix<F>) -> AlgMatrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        AlgMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &AlgMatrix<F>) -> AlgMatrix<F> {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> AlgMatrix<F> {
        AlgMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> AlgMatrix<F> {
        let mut out = AlgMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> AlgMatrix<F> {
        let mut out = AlgMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &AlgMatrix<F>) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    /// Applies a map to every entry (e.g. re-indexing into a tensor algebra).
    pub fn map_entries(&self, f: impl Fn(&Element<F>) -> Element<F>) -> AlgMatrix<F> {
        AlgMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}
