use alloc::vec::Vec;

use crate::rewriting::free_reduce;

/// Reflection length in the universal group `W_n` of the element spelled by
/// `letters`.
///
/// In `W_n` a word is the identity iff stack cancellation empties it, i.e. iff
/// its letters admit a non-crossing perfect matching into equal pairs. So the
/// fewest deletions leaving the identity is `p − 2M`, where `M` is the largest
/// non-crossing matching of equal letters in the reduced word of length `p`.
/// `M` comes from the interval recurrence
/// `M[i..j] = max(M[i+1..j], max_{k: u_k = u_i} 1 + M[i+1..k−1] + M[k+1..j])`
/// in O(p³) time.
pub fn universal_reflection_length(letters: &[u8]) -> usize {
    let w = free_reduce(letters);
    let p = w.len();
    if p == 0 {
        return 0;
    }
    // best[i][j] for the half-open interval i..j, stored at i * (p + 1) + j.
    let stride = p + 1;
    let mut best: Vec<u32> = alloc::vec![0; stride * stride];
    for len in 2..=p {
        for i in 0..=p - len {
            let j = i + len;
            let mut value = best[(i + 1) * stride + j];
            for k in i + 1..j {
                if w[k] == w[i] {
                    let inner = best[(i + 1) * stride + k];
                    let outer = best[(k + 1) * stride + j];
                    value = value.max(1 + inner + outer);
                }
            }
            best[i * stride + j] = value;
        }
    }
    p - 2 * best[p] as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Word;

    fn l(letters: &[usize]) -> usize {
        universal_reflection_length(&Word::from_one_based(letters, 9).unwrap())
    }

    #[test]
    fn worked_values() {
        assert_eq!(l(&[]), 0);
        assert_eq!(l(&[1]), 1);
        assert_eq!(l(&[1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2]), 6);
        assert_eq!(l(&[1, 2, 1, 3, 1, 3, 2, 1, 2]), 3);
        assert_eq!(l(&[1, 1]), 0);
        assert_eq!(l(&[1, 2, 1, 2, 1, 2]), 2);
    }
}
