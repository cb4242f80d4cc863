use serde::Serialize;

/// Values indexed by intervals `[i, j]` with `1 ≤ i ≤ j ≤ n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalTable<T> {
    n: usize,
    cells: Vec<T>,
}

impl<T: Clone> IntervalTable<T> {
    pub fn new(n: usize, fill: T) -> Self {
        IntervalTable {
            n,
            cells: vec![fill; n * n],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i <= j && j <= self.n, "bad interval [{i}, {j}]");
        (i - 1) * self.n + (j - 1)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.cells[self.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        let k = self.idx(i, j);
        self.cells[k] = value;
    }

    /// Iterates `(i, j, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        (1..=self.n).flat_map(move |i| (i..=self.n).map(move |j| (i, j, self.get(i, j))))
    }
}

/// `Ω(n) = n(n+1)/2`, the number of intervals over a sequence of length `n`.
pub fn interval_count(n: usize) -> u64 {
    let n = n as u64;
    n * (n + 1) / 2
}
