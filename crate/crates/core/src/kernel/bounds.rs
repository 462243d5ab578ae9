//! Kernel size bounds, stated in terms of the modulator size and the budget.

/// Binomial coefficient for small arguments.
fn choose(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Maximum number of vertices marked in one clique:
/// `(8 C(s,3) + 4 C(s,2) + 2 s) (k + 4)`.
pub fn epsilon(k: usize, s: usize) -> u128 {
    let s = s as u128;
    (8 * choose(s, 3) + 4 * choose(s, 2) + 2 * s) * (k as u128 + 4)
}

/// `|S| + 2|S| epsilon(k) + 1525 k |S|`.
pub fn kernel_bound(k: usize, s: usize) -> u128 {
    let (k128, s128) = (k as u128, s as u128);
    s128 + 2 * s128 * epsilon(k, s) + 1525 * k128 * s128
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub k: usize,
    pub s: usize,
    pub clique_components: usize,
    pub v1: usize,
    pub v2: usize,
    pub total: usize,
    pub bound: u128,
}

impl BoundReport {
    pub fn clique_components_ok(&self) -> bool {
        self.clique_components <= 2 * self.s
    }

    pub fn v1_ok(&self) -> bool {
        self.v1 as u128 <= 2 * self.s as u128 * epsilon(self.k, self.s)
    }

    pub fn v2_ok(&self) -> bool {
        self.v2 as u128 <= 1525 * self.k as u128 * self.s as u128
    }

    pub fn total_ok(&self) -> bool {
        self.total as u128 <= self.bound
    }

    pub fn within_bound(&self) -> bool {
        self.clique_components_ok() && self.v1_ok() && self.v2_ok() && self.total_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_example() {
        assert_eq!(epsilon(1, 4), 320);
        assert_eq!(epsilon(3, 0), 0);
        assert_eq!(epsilon(0, 1), 8);
    }

    #[test]
    fn bound_is_zero_without_modulator() {
        assert_eq!(kernel_bound(5, 0), 0);
        assert_eq!(kernel_bound(1, 1), 1 + 2 * 10 + 1525);
    }
}
