use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{RepmodError, Weight};

/// Dimension of the irreducible gl(n)-module with highest weight `sum k_i eps_i`:
/// the product over `i < j` of `(k_i - k_j + j - i) / (j - i)`.
pub fn weyl_dim(k: &[i64]) -> Result<u64, RepmodError> {
    if k.windows(2).any(|w| w[0] < w[1]) {
        return Err(RepmodError::NonDominant(k.to_vec()));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.len() {
        for j in i + 1..k.len() {
            let gap = (j - i) as i64;
            num *= k[i] - k[j] + gap;
            den *= gap;
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r == BigInt::from(0));
    Ok(q.to_u64().expect("dimension fits in u64"))
}

/// `weyl_dim(eps part) * weyl_dim(delta part)` for gl(m) + gl(n).
pub fn product_dim(w: &Weight) -> Result<u64, RepmodError> {
    let (e, d) = w.int_parts().ok_or_else(|| RepmodError::NonIntegral(w.to_string()))?;
    Ok(weyl_dim(&e)? * weyl_dim(&d)?)
}
