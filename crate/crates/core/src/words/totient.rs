use std::sync::OnceLock;

/// Euler totient table filled by a linear-style sieve.
///
/// Conventions: `Φ(1) = 1`, and `Φ(x) = 0` whenever `x` is not a positive
/// integer, so formulas such as `Φ(ℓ/2)` evaluate uniformly on all `ℓ`.
#[derive(Clone, Debug)]
pub struct Totient {
    table: Vec<u64>,
}

impl Totient {
    /// Sieve of `Φ(0..=n)`.
    pub fn up_to(n: usize) -> Totient {
        let mut table: Vec<u64> = (0..=n as u64).collect();
        for p in 2..=n {
            if table[p] == p as u64 {
                for m in (p..=n).step_by(p) {
                    table[m] -= table[m] / p as u64;
                }
            }
        }
        if n >= 1 {
            table[0] = 0;
        }
        Totient { table }
    }

    pub fn limit(&self) -> usize {
        self.table.len() - 1
    }

    /// `Φ(n)`, with `Φ(n) = 0` for `n <= 0`. Falls back to trial division
    /// beyond the sieve limit.
    pub fn get(&self, n: i64) -> u64 {
        if n <= 0 {
            0
        } else if (n as usize) < self.table.len() {
            self.table[n as usize]
        } else {
            trial_division(n as u64)
        }
    }

    /// `Φ(num / den)`: zero unless the quotient is a positive integer.
    pub fn of_quotient(&self, num: i64, den: i64) -> u64 {
        if den <= 0 || num <= 0 || num % den != 0 {
            0
        } else {
            self.get(num / den)
        }
    }
}

fn trial_division(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn shared() -> &'static Totient {
    static TABLE: OnceLock<Totient> = OnceLock::new();
    TABLE.get_or_init(|| Totient::up_to(1 << 16))
}

pub fn totient(n: i64) -> u64 {
    shared().get(n)
}

pub fn totient_of_quotient(num: i64, den: i64) -> u64 {
    shared().of_quotient(num, den)
}

/// `Σ_{n<=l} 2Φ(n)`: the cumulative size of the orbit of a simple
/// non-boundary curve.
pub fn summatory(l: usize) -> u64 {
    (1..=l as i64).map(|n| 2 * totient(n)).sum()
}
