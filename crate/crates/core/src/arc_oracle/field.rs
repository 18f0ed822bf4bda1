//! Finite fields with at most 256 elements, by full addition and
//! multiplication tables.

use super::OracleError;

/// `F_q` with elements encoded as `0..q`: the base-`p` digits of an element
/// are its coefficients over the prime field in a fixed polynomial basis, so
/// `0..p` is the prime field.
#[derive(Clone, Debug)]
pub struct SmallField {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    generator: u8,
    log: Vec<u32>,
}

fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Polynomials over `F_p` as coefficient vectors, lowest degree first.
fn poly_mod(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = r.pop().expect("nonempty");
        if c == 0 {
            continue;
        }
        let shift = r.len() - dm;
        for (i, &mi) in m[..dm].iter().enumerate() {
            // m is monic: subtract c * m * X^shift
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
    }
    r
}

fn digits(x: usize, p: usize, k: u32) -> Vec<usize> {
    (0..k).scan(x, |v, _| {
        let d = *v % p;
        *v /= p;
        Some(d)
    }).collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_irreducible(m: &[usize], p: usize) -> bool {
    let k = m.len() - 1;
    for deg in 1..=k / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut f = digits(low, p, deg as u32);
            f.push(1);
            if poly_mod(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl SmallField {
    pub fn new(q: u64) -> Result<Self, OracleError> {
        let qs = q as usize;
        let (p, k) = prime_power(qs).filter(|_| q <= 256).ok_or(OracleError::UnsupportedField(q))?;
        // a monic irreducible polynomial of degree k over F_p
        let modulus = (0..qs)
            .map(|low| {
                let mut m = digits(low, p, k);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("irreducible polynomials exist in every degree");
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let da = digits(a, p, k);
            for b in 0..qs {
                let db = digits(b, p, k);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = undigits(&s, p) as u8;
                let mut prod = vec![0usize; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                mul[a * qs + b] = undigits(&poly_mod(&prod, &modulus, p), p) as u8;
            }
        }
        let neg = (0..qs).map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).expect("additive inverse") as u8).collect();
        let mut field = SmallField { q: qs, p, add, mul, neg, generator: 0, log: vec![0; qs] };
        let g = (1..qs).find(|&g| field.multiplicative_order(g as u8) == qs - 1).expect("cyclic group") as u8;
        field.set_generator(g)?;
        Ok(field)
    }

    fn multiplicative_order(&self, g: u8) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    /// Uses `g` for discrete logarithms; it must be a primitive element.
    pub fn set_generator(&mut self, g: u8) -> Result<(), OracleError> {
        if g == 0 || g as usize >= self.q || self.multiplicative_order(g) != self.q - 1 {
            return Err(OracleError::NotPrimitive(g));
        }
        self.generator = g;
        let mut x = 1u8;
        for k in 0..self.q - 1 {
            self.log[x as usize] = k as u32;
            x = self.mul(x, g);
        }
        Ok(())
    }

    /// All primitive elements, ascending.
    pub fn primitive_elements(&self) -> Vec<u8> {
        (1..self.q).filter(|&g| self.multiplicative_order(g as u8) == self.q - 1).map(|g| g as u8).collect()
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn generator(&self) -> u8 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Discrete logarithm to the current generator; `a` must be nonzero.
    #[inline]
    pub fn log(&self, a: u8) -> u32 {
        debug_assert!(a != 0);
        self.log[a as usize]
    }

    /// Image of the integer `n` in the prime field.
    pub fn from_int(&self, n: i64) -> u8 {
        n.rem_euclid(self.p as i64) as u8
    }

    pub fn inverse(&self, a: u8) -> Option<u8> {
        (1..self.q as u16).map(|b| b as u8).find(|&b| self.mul(a, b) == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_on_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = SmallField::new(q).unwrap();
            let q = q as u8;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inverse(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn generators_and_logs() {
        let f = SmallField::new(7).unwrap();
        assert_eq!(f.generator(), 3);
        assert_eq!(f.primitive_elements(), vec![3, 5]);
        assert_eq!(f.log(1), 0);
        assert_eq!(f.log(3), 1);
        assert_eq!(f.log(2), 2);
        assert_eq!(SmallField::new(5).unwrap().generator(), 2);
        assert_eq!(SmallField::new(256).unwrap().order(), 256);
    }

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0u64, 1, 6, 12, 257] {
            assert!(SmallField::new(q).is_err());
        }
    }
}
