use std::mem::size_of;

/// Range-minimum over a fixed array. `O(n log n)` words, `O(1)` query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseTable<T> {
    n: usize,
    /// Row `k` holds minima of windows of length `2^k`, row-major.
    table: Vec<T>,
}

impl<T: Copy + Ord> SparseTable<T> {
    pub fn new(a: &[T]) -> Self {
        let n = a.len();
        if n == 0 {
            return Self { n, table: Vec::new() };
        }
        let levels = n.ilog2() as usize + 1;
        let mut table = Vec::with_capacity(n * levels);
        table.extend_from_slice(a);
        for k in 1..levels {
            let half = 1 << (k - 1);
            let prev = (k - 1) * n;
            for i in 0..n {
                let v = if i + half < n {
                    table[prev + i].min(table[prev + i + half])
                } else {
                    table[prev + i]
                };
                table.push(v);
            }
        }
        Self { n, table }
    }

    /// Minimum of `a[l..=r]`.
    #[inline]
    pub fn min(&self, l: usize, r: usize) -> T {
        debug_assert!(l <= r && r < self.n);
        let k = (r - l + 1).ilog2() as usize;
        let row = k * self.n;
        self.table[row + l].min(self.table[row + r + 1 - (1 << k)])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn heap_bytes(&self) -> usize {
        self.table.len() * size_of::<T>()
    }
}

/// Range-minimum in `O(n / B log n)` extra words: a sparse table over the
/// minima of blocks of `B` entries, with scans inside the two end blocks.
/// The array itself is passed to each query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRmq<T> {
    n: usize,
    blocks: SparseTable<T>,
}

impl<T: Copy + Ord> BlockRmq<T> {
    pub const B: usize = 16;

    pub fn new(a: &[T]) -> Self {
        let minima: Vec<T> = a
            .chunks(Self::B)
            .map(|c| *c.iter().min().expect("non-empty chunk"))
            .collect();
        Self {
            n: a.len(),
            blocks: SparseTable::new(&minima),
        }
    }

    /// Minimum of `a[l..=r]`; `a` must be the array given to `new`.
    #[inline]
    pub fn min(&self, a: &[T], l: usize, r: usize) -> T {
        debug_assert!(l <= r && r < self.n && a.len() == self.n);
        let (bl, br) = (l / Self::B, r / Self::B);
        let scan = |x: &[T]| x.iter().copied().min().expect("non-empty range");
        if bl == br {
            return scan(&a[l..=r]);
        }
        let m = scan(&a[l..(bl + 1) * Self::B]).min(scan(&a[br * Self::B..=r]));
        if bl + 1 < br {
            m.min(self.blocks.min(bl + 1, br - 1))
        } else {
            m
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn heap_bytes(&self) -> usize {
        self.blocks.heap_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn block_agrees_with_scan(a in proptest::collection::vec(0u32..50, 1..200), x in 0usize..1000, y in 0usize..1000) {
            let st = BlockRmq::new(&a);
            let (l, r) = ((x % a.len()).min(y % a.len()), (x % a.len()).max(y % a.len()));
            prop_assert_eq!(st.min(&a, l, r), *a[l..=r].iter().min().unwrap());
        }
    }

    proptest! {
        #[test]
        fn agrees_with_scan(a in proptest::collection::vec(0u32..50, 1..120), x in 0usize..1000, y in 0usize..1000) {
            let st = SparseTable::new(&a);
            let (l, r) = ((x % a.len()).min(y % a.len()), (x % a.len()).max(y % a.len()));
            prop_assert_eq!(st.min(l, r), *a[l..=r].iter().min().unwrap());
        }
    }
}
