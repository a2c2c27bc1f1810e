/// Borrowed view of one adjacency row.
#[derive(Clone, Copy)]
pub(crate) struct BitRow<'a>(&'a [u64]);

impl<'a> BitRow<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitRow(words)
    }

    #[inline]
    pub(crate) fn get(self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn words(self) -> &'a [u64] {
        self.0
    }
}

/// Indices of set bits in `words`, ascending.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_in_order() {
        let w = [0b1010u64, 1 << 63];
        assert_eq!(ones(&w).collect::<Vec<_>>(), vec![1, 3, 127]);
        assert!(BitRow::new(&w).get(127));
        assert!(!BitRow::new(&w).get(0));
    }
}
