use rug::{Integer, Rational};

use crate::arith::{arcsin_power_series, binomial, f_cs, factorial, sine_power_series};

/// Coefficient `c_{h,g}` of `x^{2g-2}` in `(2 sin(x/2))^{2h-2}`, from the
/// closed alternating sum. Zero for `h > g`.
pub fn sine_coeff(h: u32, g: u32) -> Rational {
    if h > g {
        return Rational::new();
    }
    match h {
        0 => f_cs(g),
        1 => Rational::from(u32::from(g == 1)),
        _ => {
            let mut acc = Integer::new();
            for k in 1..h {
                let term = binomial(2 * i64::from(h) - 2, i64::from(h - 1 + k))
                    * Integer::from(Integer::u_pow_u(k, 2 * g - 2));
                if k % 2 == 1 {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            let mut v = Rational::from((acc * 2u32, factorial(2 * g - 2)));
            if g.is_multiple_of(2) {
                v = -v;
            }
            v
        }
    }
}

/// Same coefficient read off the Taylor series directly.
pub fn sine_coeff_oracle(h: u32, g: u32) -> Rational {
    if h > g {
        return Rational::new();
    }
    // (2 sin(x/2))^{2h-2} = x^{2h-2} u(x^2)^{2h-2}, so x^{2g-2} sits at y^{g-h}.
    let series = sine_power_series(h, (g - h) as usize).expect("u(0) = 1");
    series[(g - h) as usize].clone()
}

/// `alpha_{g,h}`: coefficient of `r^{g-h}` in
/// `(arcsin(sqrt(r)/2) / (sqrt(r)/2))^{2h-2}`. Zero for `h > g`.
pub fn arcsin_alpha(g: u32, h: u32) -> Rational {
    if h > g {
        return Rational::new();
    }
    arcsin_power_series(h, (g - h) as usize).expect("constant term 1")[(g - h) as usize].clone()
}

/// Independent check of [`arcsin_alpha`]: inverts the lower-triangular
/// matrix of sine coefficients.
pub fn arcsin_alpha_oracle(g: u32, h: u32) -> Rational {
    SineTable::new(g).inverse_row(g)[h as usize].clone()
}

/// Cached matrix `c_{h,g}` for `h, g <= gmax`.
#[derive(Clone, Debug)]
pub struct SineTable {
    // rows indexed by g, columns by h
    rows: Vec<Vec<Rational>>,
}

impl SineTable {
    pub fn new(gmax: u32) -> Self {
        let rows = (0..=gmax).map(|g| (0..=g).map(|h| sine_coeff(h, g)).collect()).collect();
        SineTable { rows }
    }

    pub fn gmax(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn get(&self, h: u32, g: u32) -> &Rational {
        static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
        if h > g {
            return ZERO.get_or_init(Rational::new);
        }
        &self.rows[g as usize][h as usize]
    }

    /// Row `g` of the inverse matrix, by forward substitution on the unit
    /// lower-triangular system.
    fn inverse_row(&self, g: u32) -> Vec<Rational> {
        let n = g as usize + 1;
        let mut inv = vec![vec![Rational::new(); n]; n];
        for i in 0..n {
            for j in (0..=i).rev() {
                let mut acc = Rational::from(u32::from(i == j));
                for k in j + 1..=i {
                    acc -= Rational::from(&inv[i][k] * self.get(j as u32, k as u32));
                }
                inv[i][j] = acc;
            }
        }
        inv.swap_remove(g as usize)
    }
}
