use num_bigint::BigInt;

use super::{binomial, Rat};

/// Bernoulli number B_n in the convention with B_1 = -1/2, computed from the
/// defining recurrence sum_{k=0}^{n} C(n+1, k) B_k = 0.
///
/// The computation is quadratic in n, which is instant at the sizes the
/// proportionality constants need (n <= 8). Results are exact.
pub fn bernoulli(n: u32) -> Rat {
    let mut table: Vec<Rat> = Vec::with_capacity(n as usize + 1);
    table.push(Rat::one());
    for m in 1..=n as u64 {
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let mut acc = Rat::zero();
        for (k, b) in table.iter().enumerate() {
            acc += &(&Rat::from_int(binomial(m + 1, k as u64)) * b);
        }
        let bm = -(acc / Rat::from_int(BigInt::from(m + 1)));
        table.push(bm);
    }
    table.pop().expect("table holds n+1 entries")
}
