use std::sync::{Mutex, OnceLock};

use crate::arith::RationalExt;
use rug::{Integer, Rational};

// Both caches only ever grow; values are immutable once pushed.
static BERNOULLI: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
static FACTORIAL: OnceLock<Mutex<Vec<Integer>>> = OnceLock::new();

/// Exact Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: u32) -> Rational {
    let n = n as usize;
    if n > 1 && n % 2 == 1 {
        return Rational::new();
    }
    let cache = BERNOULLI.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut table = cache.lock().expect("bernoulli cache poisoned");
    while table.len() <= n {
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let m = table.len();
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from(b * &binom);
            }
            binom *= (m + 1 - k) as u32;
            binom /= (k + 1) as u32;
        }
        acc /= -((m + 1) as i64);
        table.push(acc);
    }
    table[n].clone()
}

/// `n!` from a shared cache.
pub fn factorial(n: u32) -> Integer {
    let n = n as usize;
    let cache = FACTORIAL.get_or_init(|| Mutex::new(vec![Integer::from(1)]));
    let mut table = cache.lock().expect("factorial cache poisoned");
    while table.len() <= n {
        let next = Integer::from(table.last().expect("nonempty") * table.len() as u32);
        table.push(next);
    }
    table[n].clone()
}

/// Chern–Simons coefficient: `1` at genus 0, else `(-1)^{g-1} B_{2g} / (2g (2g-2)!)`.
pub fn f_cs(g: u32) -> Rational {
    if g == 0 {
        return Rational::from(1);
    }
    let mut v = bernoulli(2 * g);
    v /= Rational::from(factorial(2 * g - 2) * (2 * g));
    if g.is_multiple_of(2) {
        -v
    } else {
        v
    }
}
