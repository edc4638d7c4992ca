//! Sorted subsets of `{0, ..., N-1}`: colex ranks, complements and shuffle signs.

/// `C(a, b)` for small arguments.
pub fn choose(a: usize, b: usize) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut r: u128 = 1;
    for i in 0..b {
        r = r * (a - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(r).unwrap_or(u64::MAX)
}

/// Colex rank of a strictly increasing subset.
pub fn colex_rank(subset: &[usize]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(j, &c)| choose(c, j + 1))
        .sum()
}

/// Inverse of [`colex_rank`] for `k`-subsets.
pub fn colex_unrank(mut rank: u64, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for j in (1..=k).rev() {
        let mut c = j - 1;
        while choose(c + 1, j) <= rank {
            c += 1;
        }
        rank -= choose(c, j);
        out[j - 1] = c;
    }
    out
}

pub fn complement(subset: &[usize], big_n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(big_n - subset.len());
    let mut it = subset.iter().peekable();
    for i in 0..big_n {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            out.push(i);
        }
    }
    out
}

/// Sign of the permutation sorting the concatenation of two disjoint
/// increasing sequences.
pub fn shuffle_sign(first: &[usize], second: &[usize]) -> i32 {
    let mut inversions = 0usize;
    let mut k = 0;
    // for each b in second, count the entries of first above it
    for &b in second {
        while k < first.len() && first[k] < b {
            k += 1;
        }
        inversions += first.len() - k;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Bit mask of a subset of positions below 128.
pub fn mask_of(subset: &[usize]) -> u128 {
    subset.iter().fold(0u128, |m, &i| m | 1u128 << i)
}

pub fn positions(mask: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

/// Sign of `e_A ∧ e_B` relative to `e_{A ∪ B}`; zero if they meet.
pub fn wedge_sign(a: u128, b: u128) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut m = b;
    while m != 0 {
        let j = m.trailing_zeros();
        m &= m - 1;
        // entries of a above j must jump over it
        inversions += if j == 127 { 0 } else { (a >> (j + 1)).count_ones() };
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
