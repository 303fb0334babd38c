//! Deterministic test and benchmark inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Prefix of length `n` of the Fibonacci word `abaababaabaab...`.
pub fn fibonacci(n: usize) -> Vec<u8> {
    let (mut a, mut b) = (b"a".to_vec(), b"ab".to_vec());
    while b.len() < n {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = std::mem::replace(&mut b, next);
    }
    b.truncate(n);
    b
}

/// Prefix of length `n` of the Thue-Morse sequence over `{a, b}`.
pub fn thue_morse(n: usize) -> Vec<u8> {
    (0..n as u64)
        .map(|k| if k.count_ones() % 2 == 0 { b'a' } else { b'b' })
        .collect()
}

/// `n` uniform symbols drawn from the first `sigma` lowercase-and-up bytes
/// starting at `a`.
pub fn random(n: usize, sigma: u8, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

/// Every string over `{a, b}` of length `len`, in counting order.
pub fn binary_strings(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..1 << len).map(move |bits| {
        (0..len)
            .map(|k| if bits >> k & 1 == 1 { b'b' } else { b'a' })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        assert_eq!(fibonacci(13), b"abaababaabaab");
        assert_eq!(thue_morse(8), b"abbabaab");
        assert_eq!(random(50, 3, 4), random(50, 3, 4));
        assert!(random(500, 3, 1).iter().all(|c| (b'a'..=b'c').contains(c)));
        assert_eq!(binary_strings(3).count(), 8);
    }
}
