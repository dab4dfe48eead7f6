use alloc::vec;
use alloc::vec::Vec;

/// Lexicographic walk over all tuples in `0..base` of a fixed length, with
/// the first coordinate most significant.
pub(crate) struct Odometer {
    digits: Vec<usize>,
    base: usize,
    started: bool,
}

impl Odometer {
    pub(crate) fn new(base: usize, len: usize) -> Self {
        Odometer {
            digits: vec![0; len],
            base,
            started: false,
        }
    }

    /// Advances to the next tuple; returns `None` when exhausted.
    pub(crate) fn next(&mut self) -> Option<&[usize]> {
        if !self.started {
            self.started = true;
            if self.base == 0 && !self.digits.is_empty() {
                return None;
            }
            return Some(&self.digits);
        }
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.base {
                return Some(&self.digits);
            }
            self.digits[i] = 0;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walks_in_lexicographic_order() {
        let mut od = Odometer::new(2, 2);
        let mut seen = Vec::new();
        while let Some(t) = od.next() {
            seen.push(t.to_vec());
        }
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn zero_length_yields_one_empty_tuple() {
        let mut od = Odometer::new(3, 0);
        assert_eq!(od.next(), Some(&[][..]));
        assert_eq!(od.next(), None);
    }
}
