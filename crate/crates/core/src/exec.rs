//! Exhaustive-scan and corpus-driver primitives, parallel with the
//! `parallel` feature (rayon) and sequential otherwise. Both paths return
//! identical results: winners are picked by a total order on masks, never
//! by completion order.

use std::cmp::Ordering;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Order on vertex subsets encoded as bitmasks (bit i = vertex i present),
/// matching lexicographic order on the sorted member lists. The empty set
/// comes first, then {0}, {0,1}, ..., {0,2}, {1}, ...
pub fn lex_mask_cmp(mut a: u32, mut b: u32) -> Ordering {
    loop {
        if a == b {
            return Ordering::Equal;
        }
        if a == 0 {
            return Ordering::Less;
        }
        if b == 0 {
            return Ordering::Greater;
        }
        let (ta, tb) = (a.trailing_zeros(), b.trailing_zeros());
        if ta != tb {
            return ta.cmp(&tb);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// Least valid mask under [`lex_mask_cmp`] among all `2^bits` masks.
pub fn min_valid_mask<F>(bits: usize, valid: F) -> Option<u32>
where
    F: Fn(u32) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        min_valid_mask_par(bits, valid)
    }
    #[cfg(not(feature = "parallel"))]
    {
        min_valid_mask_seq(bits, valid)
    }
}

pub fn min_valid_mask_seq<F>(bits: usize, valid: F) -> Option<u32>
where
    F: Fn(u32) -> bool,
{
    assert!(bits < 32);
    let mut best: Option<u32> = None;
    for mask in 0..1u32 << bits {
        if valid(mask) {
            match best {
                Some(b) if lex_mask_cmp(mask, b) != Ordering::Less => {}
                _ => best = Some(mask),
            }
        }
    }
    best
}

#[cfg(feature = "parallel")]
pub fn min_valid_mask_par<F>(bits: usize, valid: F) -> Option<u32>
where
    F: Fn(u32) -> bool + Sync,
{
    assert!(bits < 32);
    (0..1u32 << bits)
        .into_par_iter()
        .filter(|&m| valid(m))
        .min_by(|&a, &b| lex_mask_cmp(a, b))
}

/// All valid masks, sorted by [`lex_mask_cmp`].
pub fn collect_valid_masks<F>(bits: usize, valid: F) -> Vec<u32>
where
    F: Fn(u32) -> bool + Sync,
{
    assert!(bits < 32);
    let mut out: Vec<u32>;
    #[cfg(feature = "parallel")]
    {
        out = (0..1u32 << bits)
            .into_par_iter()
            .filter(|&m| valid(m))
            .collect();
    }
    #[cfg(not(feature = "parallel"))]
    {
        out = (0..1u32 << bits).filter(|&m| valid(m)).collect();
    }
    out.sort_unstable_by(|&a, &b| lex_mask_cmp(a, b));
    out
}

/// Order-preserving map over a corpus of independent work items.
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}
