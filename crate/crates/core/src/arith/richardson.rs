use rug::Rational;

use super::factorial;

/// Weights `w_k` such that `R^N[s](n) = sum_k w_k s(n+k)`, i.e.
/// `w_k = (n+k)^N (-1)^{k+N} / (k! (N-k)!)`.
pub fn richardson_weights(n: u64, order: u32) -> Vec<Rational> {
    (0..=order)
        .map(|k| {
            let base = rug::Integer::from(n + u64::from(k));
            let pow = rug::Integer::from(rug::ops::Pow::pow(&base, order));
            let den = factorial(k) * factorial(order - k);
            let w = Rational::from((pow, den));
            if (k + order) % 2 == 1 {
                -w
            } else {
                w
            }
        })
        .collect()
}
