/// Neumaier-compensated accumulator.
///
/// Energy sums over large tap matrices and long sample arrays must stay
/// consistent to ~1e-12 relative; plain summation drifts past that around
/// 10^7 addends.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if libm::fabs(self.sum) >= libm::fabs(value) {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

pub(crate) fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    acc.total()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_small_integers() {
        assert_eq!(compensated_sum([1.0, 2.0, 3.0].into_iter()), 6.0);
    }

    #[test]
    fn recovers_cancellation() {
        // 1 + 1e100 - 1e100 loses the 1 under plain summation.
        let total = compensated_sum([1.0, 1e100, 1.0, -1e100].into_iter());
        assert_eq!(total, 2.0);
    }
}
