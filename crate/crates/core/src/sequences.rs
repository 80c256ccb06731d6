//! Euler zigzag numbers, Springer numbers, and the closed-form Betti numbers
//! of the real toric varieties of the classical types.

use crate::root_system::{Family, RootSystemSpec};

/// Euler zigzag numbers `a_0, ..., a_limit` (OEIS A000111) from the Seidel
/// boustrophedon triangle.
pub fn zigzag_numbers(limit: usize) -> Vec<u128> {
    let mut out = vec![1u128];
    let mut row = vec![1u128];
    for n in 1..=limit {
        let mut next = vec![0u128; n + 1];
        for k in 1..=n {
            next[k] = next[k - 1] + row[n - k];
        }
        out.push(next[n]);
        row = next;
    }
    out
}

/// Springer numbers `b_0, ..., b_limit` (OEIS A001586), the generalized
/// Euler numbers of type B, from the signed boustrophedon triangle
/// `T(n, 0) = T(n-1, n-1)`, `T(n, k) = T(n, k-1) + 2 T(n-1, n-k)`.
pub fn generalized_euler_numbers(limit: usize) -> Vec<u128> {
    // row n - 1 ends with b_n
    let mut b = vec![1u128];
    let mut row = vec![1u128];
    for n in 1..=limit {
        b.push(*row.last().expect("nonempty"));
        let mut next = vec![0u128; n + 1];
        next[0] = row[n - 1];
        for k in 1..=n {
            next[k] = next[k - 1] + 2 * row[n - k];
        }
        row = next;
    }
    b
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn pow2(e: i64) -> i128 {
    if e < 0 {
        0
    } else {
        1i128 << e
    }
}

/// `beta_k` of the real toric variety of a classical type, or `None` for
/// the exceptional types.
pub fn closed_form_betti(spec: RootSystemSpec, k: usize) -> Option<i128> {
    let n = spec.rank() as i64;
    let k = k as i64;
    let len = 2 * n as usize + 4;
    let a = zigzag_numbers(len);
    let b = generalized_euler_numbers(len);
    let at = |i: i64| if i < 0 { 0 } else { a[i as usize] as i128 };
    let bt = |i: i64| if i < 0 { 0 } else { b[i as usize] as i128 };
    let top = binomial(n, 2 * k) * (2 * bt(2 * k) - pow2(2 * k) * at(2 * k));
    Some(match spec.family() {
        Family::A => binomial(n + 1, 2 * k) * at(2 * k),
        Family::B => binomial(n, 2 * k) * bt(2 * k) + binomial(n, 2 * k - 1) * bt(2 * k - 1),
        Family::C => binomial(n, 2 * k - 2) * (pow2(n) - pow2(2 * k - 2)) * at(2 * k - 2) + top,
        Family::D => {
            binomial(n, 2 * k - 4) * (pow2(2 * k - 4) + (n - 2 * k + 2) as i128 * pow2(n - 1)) * at(2 * k - 4) + top
        }
        _ => return None,
    })
}

/// All nonzero-range closed-form Betti numbers `beta_0, ..., beta_rank`.
pub fn closed_form_vector(spec: RootSystemSpec) -> Option<Vec<i128>> {
    let mut v: Vec<i128> = (0..=spec.rank()).map(|k| closed_form_betti(spec, k)).collect::<Option<_>>()?;
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    Some(v)
}
