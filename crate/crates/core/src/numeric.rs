//! Small numeric helpers shared by the region sweeps and the code evaluator.

/// Correctly rounded floating-point summation (Shewchuk's non-overlapping partials).
///
/// The rounded result does not depend on the order in which terms were added,
/// so partial accumulators can be merged in any order and the sum of `k`
/// copies of `c` is exactly `k * c` whenever that product is representable.
#[derive(Debug, Clone, Default)]
pub struct ExactSum {
    partials: Vec<f64>,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, mut x: f64) {
        let mut i = 0;
        for j in 0..self.partials.len() {
            let mut y = self.partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                self.partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        self.partials.truncate(i);
        self.partials.push(x);
    }

    pub fn merge(&mut self, other: &ExactSum) {
        for &p in &other.partials {
            self.add(p);
        }
    }

    /// The correctly rounded value of the accumulated sum.
    pub fn value(&self) -> f64 {
        let mut n = self.partials.len();
        if n == 0 {
            return 0.0;
        }
        n -= 1;
        let mut hi = self.partials[n];
        let mut lo = 0.0;
        while n > 0 {
            n -= 1;
            let x = hi;
            let y = self.partials[n];
            hi = x + y;
            let yr = hi - x;
            lo = y - yr;
            if lo != 0.0 {
                break;
            }
        }
        // half-even correction
        if n > 0 && ((lo < 0.0 && self.partials[n - 1] < 0.0) || (lo > 0.0 && self.partials[n - 1] > 0.0)) {
            let y = lo * 2.0;
            let x = hi + y;
            if y == x - hi {
                hi = x;
            }
        }
        hi
    }
}

impl FromIterator<f64> for ExactSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = ExactSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Number of points of a simplex grid with `cells` coordinates and `resolution`
/// points per edge.
pub fn simplex_grid_len(cells: usize, resolution: usize) -> u128 {
    if cells == 0 || resolution == 0 {
        return 0;
    }
    let steps = (resolution - 1) as u128;
    // C(steps + cells - 1, cells - 1)
    let k = (cells - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (steps + i) / i;
    }
    acc
}

/// All probability vectors over `cells` outcomes whose entries are multiples
/// of `1 / (resolution - 1)`.
///
/// Ordered lexicographically by the integer compositions, with the first cell
/// varying slowest. `resolution` must be at least 2.
pub fn simplex_grid(cells: usize, resolution: usize) -> Vec<Vec<f64>> {
    assert!(cells >= 1 && resolution >= 2);
    let steps = resolution - 1;
    let mut out = Vec::new();
    let mut comp = vec![0usize; cells];
    fn rec(pos: usize, left: usize, steps: usize, comp: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if pos + 1 == comp.len() {
            comp[pos] = left;
            out.push(comp.iter().map(|&c| c as f64 / steps as f64).collect());
            return;
        }
        for c in 0..=left {
            comp[pos] = c;
            rec(pos + 1, left - c, steps, comp, out);
        }
    }
    rec(0, steps, steps, &mut comp, &mut out);
    out
}

/// `max(0, a)`.
pub fn positive_part(a: f64) -> f64 {
    a.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sum_of_repeated_inexact_value() {
        let s: ExactSum = std::iter::repeat_n(0.3, 1024).collect();
        assert_eq!(s.value(), 0.3 * 1024.0);
        assert_eq!(s.value() / 1024.0, 0.3);
    }

    #[test]
    fn exact_sum_cancellation() {
        let s: ExactSum = [1e100, 1.0, -1e100, 1e-3].into_iter().collect();
        assert_eq!(s.value(), 1.001);
    }

    #[test]
    fn exact_sum_merge_is_order_free() {
        let xs: Vec<f64> = (0..200).map(|i| (i as f64 * 0.7351).sin() * 10f64.powi(i % 7)).collect();
        let whole: ExactSum = xs.iter().copied().collect();
        let mut a: ExactSum = xs[..77].iter().copied().collect();
        let b: ExactSum = xs[77..].iter().rev().copied().collect();
        a.merge(&b);
        assert_eq!(a.value(), whole.value());
    }

    #[test]
    fn simplex_grid_counts() {
        assert_eq!(simplex_grid(2, 101).len(), 101);
        assert_eq!(simplex_grid(4, 11).len() as u128, simplex_grid_len(4, 11));
        assert_eq!(simplex_grid_len(4, 101), 176_851);
        for p in simplex_grid(3, 5) {
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
