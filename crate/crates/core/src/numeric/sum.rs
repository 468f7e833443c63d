/// Compensated (Kahan-Babuska / Neumaier) accumulator.
///
/// Also tracks the largest magnitude added so callers can estimate the
/// rounding error left behind by cancellation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
    peak: f64,
    count: usize,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.peak = self.peak.max(x.abs());
        self.count += 1;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Largest |term| seen so far.
    pub fn peak(&self) -> f64 {
        self.peak
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Rounding error estimate: each term carries a few ulps of its own
    /// evaluation error, which compensation cannot remove.
    pub fn rounding_estimate(&self) -> f64 {
        8.0 * f64::EPSILON * self.peak
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}
