use crate::field::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, F::one())],
        }
    }

    pub fn single(i: usize, c: F) -> Self {
        if c.is_zero() {
            Self::new()
        } else {
            SparseVec {
                entries: vec![(i, c)],
            }
        }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, d)) if *j == i => *d = d.add(&c),
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (usize, &F)> + ExactSizeIterator + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn last(&self) -> Option<(usize, &F)> {
        self.entries.last().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect(),
        }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y.mul(c)));
                        b.next();
                    } else {
                        let mut s = x.clone();
                        s.add_mul(y, c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y.mul(c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one().neg())
    }

    pub fn dot(&self, other: &Self) -> F {
        let mut acc = F::zero();
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc.add_mul(x, y);
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Re-indexes entries through `f`; entries mapped to `None` are dropped.
    pub fn remap(&self, mut f: impl FnMut(usize) -> Option<usize>) -> Self {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .filter_map(|(i, c)| f(*i).map(|j| (j, c.clone())))
                .collect(),
        )
    }

    pub fn shifted(&self, offset: usize) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (i + offset, c.clone()))
                .collect(),
        }
    }
}

/// Accumulator for building sparse vectors out of many small contributions.
pub struct Accumulator<F> {
    pairs: Vec<(usize, F)>,
}

impl<F: Field> Default for Accumulator<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Accumulator<F> {
    pub fn new() -> Self {
        Accumulator { pairs: Vec::new() }
    }

    pub fn push(&mut self, i: usize, c: F) {
        if !c.is_zero() {
            self.pairs.push((i, c));
        }
    }

    pub fn push_scaled(&mut self, v: &SparseVec<F>, c: &F, offset: usize) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.pairs.push((i + offset, x.mul(c)));
        }
    }

    pub fn finish(self) -> SparseVec<F> {
        SparseVec::from_pairs(self.pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn add_scaled_cancels() {
        let a = SparseVec::from_pairs(vec![(0, q(1)), (3, q(2))]);
        let b = SparseVec::from_pairs(vec![(3, q(1)), (5, q(1))]);
        let c = a.add_scaled(&b, &q(-2));
        assert_eq!(c, SparseVec::from_pairs(vec![(0, q(1)), (5, q(-2))]));
        assert_eq!(a.dot(&b), q(2));
    }

    #[test]
    fn duplicates_are_summed() {
        let v = SparseVec::from_pairs(vec![(2, q(1)), (1, q(4)), (2, q(-1))]);
        assert_eq!(v.nnz(), 1);
        assert_eq!(v.get(1), q(4));
    }
}
