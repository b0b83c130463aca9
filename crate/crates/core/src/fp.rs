//! Arbitrary-precision prime-field arithmetic.
//!
//! A [`PrimeField`] owns the modulus and all cached constants; elements are
//! plain canonical residues. Multiplication, squaring and inversion report to
//! the ledger passed at the call site, additions and multiplications by small
//! fixed constants go to the side channel only.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::costs::CostLedger;
use crate::{Error, Result};

/// Element of `F_p`, stored as the canonical residue in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fp(pub(crate) BigUint);

impl Fp {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

/// The field context: modulus plus residue data and cached constants.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: BigUint,
    p_mod_3: u8,
    p_mod_5: u8,
    /// (p-1)/3 when p = 1 mod 3.
    cubic_exp: Option<BigUint>,
    /// (p-1)/5 when p = 1 mod 5.
    quintic_exp: Option<BigUint>,
    /// Inverses of small integers, used as uncounted interpolation constants.
    inv_small: Vec<BigUint>,
}

const INV_SMALL_MAX: u64 = 64;

impl PrimeField {
    /// Builds the field, checking primality with 64 Miller-Rabin rounds.
    pub fn new(p: BigUint) -> Result<Self> {
        if p.bits() < 3 || p.is_even() {
            return Err(Error::NotPrime);
        }
        if !is_probable_prime(&p, 64) {
            return Err(Error::NotPrime);
        }
        let one = BigUint::one();
        let p_mod_3 = (&p % 3u32).to_u32_digits().first().copied().unwrap_or(0) as u8;
        let p_mod_5 = (&p % 5u32).to_u32_digits().first().copied().unwrap_or(0) as u8;
        let cubic_exp = (p_mod_3 == 1).then(|| (&p - &one) / 3u32);
        let quintic_exp = (p_mod_5 == 1).then(|| (&p - &one) / 5u32);
        // Multiples of tiny test primes are left at zero; div_small asserts.
        let mut inv_small = vec![BigUint::zero(); (INV_SMALL_MAX + 1) as usize];
        for k in 1..=INV_SMALL_MAX {
            if let Some(inv) = mod_inverse(&BigUint::from(k), &p) {
                inv_small[k as usize] = inv;
            }
        }
        Ok(PrimeField { p, p_mod_3, p_mod_5, cubic_exp, quintic_exp, inv_small })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.p
    }

    pub fn bits(&self) -> u64 {
        self.p.bits()
    }

    pub fn p_mod_3(&self) -> u8 {
        self.p_mod_3
    }

    pub fn p_mod_5(&self) -> u8 {
        self.p_mod_5
    }

    // ---- element construction ----

    pub fn zero(&self) -> Fp {
        Fp(BigUint::zero())
    }

    pub fn one(&self) -> Fp {
        Fp(BigUint::one())
    }

    pub fn from_biguint(&self, v: BigUint) -> Fp {
        Fp(v % &self.p)
    }

    pub fn from_u64(&self, v: u64) -> Fp {
        self.from_biguint(BigUint::from(v))
    }

    /// Small signed constants, e.g. curve coefficients like -2.
    pub fn from_i64(&self, v: i64) -> Fp {
        if v >= 0 {
            self.from_u64(v as u64)
        } else {
            self.neg(&self.from_u64(v.unsigned_abs()))
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp(rng.gen_biguint_below(&self.p))
    }

    // ---- uncounted operations (side channel only) ----

    pub fn add(&self, a: &Fp, b: &Fp) -> Fp {
        let mut v = &a.0 + &b.0;
        if v >= self.p {
            v -= &self.p;
        }
        Fp(v)
    }

    pub fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        if a.0 >= b.0 {
            Fp(&a.0 - &b.0)
        } else {
            Fp(&self.p - &b.0 + &a.0)
        }
    }

    pub fn neg(&self, a: &Fp) -> Fp {
        if a.0.is_zero() {
            self.zero()
        } else {
            Fp(&self.p - &a.0)
        }
    }

    pub fn double(&self, a: &Fp) -> Fp {
        self.add(a, a)
    }

    /// Multiplication by a small fixed integer constant. Uncounted: the
    /// accounting treats these as shifted additions.
    pub fn mul_small(&self, a: &Fp, k: u64) -> Fp {
        Fp((&a.0 * k) % &self.p)
    }

    pub fn mul_small_signed(&self, a: &Fp, k: i64) -> Fp {
        if k >= 0 {
            self.mul_small(a, k as u64)
        } else {
            self.neg(&self.mul_small(a, k.unsigned_abs()))
        }
    }

    /// Multiplication by the inverse of a small integer, the interpolation
    /// constants of the Karatsuba/Toom formulas. Uncounted by convention:
    /// the cost table prices only generic M/S/I.
    pub fn div_small(&self, a: &Fp, k: u64) -> Fp {
        debug_assert!(k >= 1 && k <= INV_SMALL_MAX);
        debug_assert!(!self.inv_small[k as usize].is_zero(), "divisor shares a factor with p");
        Fp((&a.0 * &self.inv_small[k as usize]) % &self.p)
    }

    // ---- counted operations ----

    pub fn mul(&self, a: &Fp, b: &Fp, led: &mut CostLedger) -> Fp {
        led.m1(1);
        Fp((&a.0 * &b.0) % &self.p)
    }

    pub fn square(&self, a: &Fp, led: &mut CostLedger) -> Fp {
        led.s1(1);
        Fp((&a.0 * &a.0) % &self.p)
    }

    pub fn inv(&self, a: &Fp, led: &mut CostLedger) -> Result<Fp> {
        if a.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        led.i1(1);
        Ok(Fp(mod_inverse(&a.0, &self.p).expect("nonzero element of a prime field")))
    }

    /// Plain square-and-multiply; consumes (bits-1) squarings and
    /// (weight-1) multiplications for a nonzero exponent.
    pub fn pow(&self, a: &Fp, e: &BigUint, led: &mut CostLedger) -> Fp {
        if e.is_zero() {
            return self.one();
        }
        let mut acc = a.clone();
        for i in (0..e.bits() - 1).rev() {
            acc = self.square(&acc, led);
            if e.bit(i) {
                acc = self.mul(&acc, a, led);
            }
        }
        acc
    }

    /// Uncounted exponentiation for context setup (Frobenius constants,
    /// validation work).
    pub fn pow_setup(&self, a: &Fp, e: &BigUint) -> Fp {
        Fp(a.0.modpow(e, &self.p))
    }

    // ---- residue tests ----

    /// True iff `a^((p-1)/3) != 1`, i.e. `a` is not a cube.
    pub fn is_cubic_nonresidue(&self, a: &Fp) -> Result<bool> {
        let e = self.cubic_exp.as_ref().ok_or(Error::ResidueClass("p = 1 mod 3 required"))?;
        Ok(!a.0.modpow(e, &self.p).is_one())
    }

    /// True iff `a^((p-1)/5) != 1`, i.e. `a` is not a fifth power.
    pub fn is_fifth_nonresidue(&self, a: &Fp) -> Result<bool> {
        let e = self.quintic_exp.as_ref().ok_or(Error::ResidueClass("p = 1 mod 5 required"))?;
        Ok(!a.0.modpow(e, &self.p).is_one())
    }

    pub fn is_square(&self, a: &Fp) -> bool {
        if a.0.is_zero() {
            return true;
        }
        let e = (&self.p - 1u32) >> 1;
        a.0.modpow(&e, &self.p).is_one()
    }

    /// Tonelli-Shanks square root; `None` signals a non-residue rather than
    /// an error. Setup-priced (uncounted): used for point sampling.
    pub fn sqrt(&self, a: &Fp) -> Option<Fp> {
        if a.0.is_zero() {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        let one = BigUint::one();
        let p_minus_1 = &self.p - &one;
        // p - 1 = q * 2^s with q odd
        let s = p_minus_1.trailing_zeros().unwrap_or(0);
        let q = &p_minus_1 >> s;
        if s == 1 {
            // p = 3 mod 4
            let e = (&self.p + 1u32) >> 2;
            return Some(Fp(a.0.modpow(&e, &self.p)));
        }
        // deterministic non-residue search
        let mut z = BigUint::from(2u32);
        while Fp(z.clone()) == self.zero() || self.is_square(&Fp(z.clone())) {
            z += 1u32;
        }
        let mut c = z.modpow(&q, &self.p);
        let mut t = a.0.modpow(&q, &self.p);
        let mut r = a.0.modpow(&((&q + &one) >> 1), &self.p);
        let mut m = s;
        while !t.is_one() {
            // find least i with t^(2^i) = 1
            let mut i = 0u64;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = (&t2 * &t2) % &self.p;
                i += 1;
            }
            let b = c.modpow(&(BigUint::one() << (m - i - 1)), &self.p);
            r = (&r * &b) % &self.p;
            c = (&b * &b) % &self.p;
            t = (&t * &c) % &self.p;
            m = i;
        }
        Some(Fp(r))
    }

    // ---- serialization ----

    /// Fixed-width big-endian hex of the canonical residue.
    pub fn to_hex(&self, a: &Fp) -> String {
        let width = ((self.p.bits() + 7) / 8 * 2) as usize;
        format!("{:0>width$}", format!("{:x}", a.0), width = width)
    }

    pub fn from_hex(&self, s: &str) -> Result<Fp> {
        let v = BigUint::parse_bytes(s.as_bytes(), 16).ok_or(Error::Encoding)?;
        if v >= self.p {
            return Err(Error::FieldMismatch);
        }
        Ok(Fp(v))
    }
}

/// Inverse modulo `m` by extended Euclid; `None` when not coprime.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m_int = BigInt::from(m.clone());
    let ext = a.extended_gcd(&m_int);
    if !ext.gcd.is_one() {
        return None;
    }
    let mut x = ext.x % &m_int;
    if x.is_negative() {
        x += &m_int;
    }
    Some(x.to_biguint().unwrap())
}

/// Miller-Rabin with `rounds` random bases. The base RNG is seeded from the
/// candidate so validation is reproducible.
pub fn is_probable_prime(n: &BigUint, rounds: u32) -> bool {
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    if *n < two {
        return false;
    }
    if *n == two || *n == three {
        return true;
    }
    if n.is_even() {
        return false;
    }
    for q in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let q = BigUint::from(q);
        if *n == q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let mut seed = [0u8; 32];
    for (i, b) in n.to_bytes_le().into_iter().take(32).enumerate() {
        seed[i] = b;
    }
    let mut rng = ChaCha12Rng::from_seed(seed);

    'witness: for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn toy_field() -> PrimeField {
        // 2^61 - 1 is prime and = 1 mod 3, but not 1 mod 5; use a prime that
        // is 1 mod 15 so all residue machinery is exercised: 1 + 15*k.
        // 2551 = 1 + 15*170 and prime.
        PrimeField::new(BigUint::from(2551u32)).unwrap()
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(BigUint::from(2549u32 * 3u32)).is_err());
        assert!(PrimeField::new(BigUint::from(1u32)).is_err());
    }

    #[test]
    fn wraparound_and_identity() {
        let f = toy_field();
        let pm1 = f.from_biguint(f.modulus() - 1u32);
        assert!(f.add(&pm1, &f.one()).is_zero());
        let a = f.from_u64(1234);
        assert_eq!(f.add(&a, &f.zero()), a);
    }

    #[test]
    fn add_sub_round_trip_random() {
        let f = toy_field();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            assert_eq!(f.sub(&f.add(&a, &b), &b), a);
        }
    }

    #[test]
    fn mul_inv_pow_contracts() {
        let f = toy_field();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(8);
        let mut led = CostLedger::new();
        assert!(f.mul(&f.one(), &f.one(), &mut led).is_one());
        for _ in 0..100 {
            let a = f.random(&mut rng);
            if a.is_zero() {
                continue;
            }
            let ai = f.inv(&a, &mut led).unwrap();
            assert!(f.mul(&a, &ai, &mut led).is_one());
            // Fermat oracle
            let e = f.modulus() - 2u32;
            assert_eq!(f.pow(&a, &e, &mut led), ai);
            // square = mul(a, a)
            assert_eq!(f.square(&a, &mut led), f.mul(&a, &a, &mut led));
            // a^(p-1) = 1
            assert!(f.pow(&a, &(f.modulus() - 1u32), &mut led).is_one());
        }
        assert!(f.inv(&f.zero(), &mut led).is_err());
    }

    #[test]
    fn pow_exponent_additivity() {
        let f = toy_field();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(9);
        let mut led = CostLedger::new();
        for _ in 0..50 {
            let a = f.random(&mut rng);
            let m = BigUint::from(rng.gen::<u32>() % 5000);
            let n = BigUint::from(rng.gen::<u32>() % 5000);
            let lhs = f.pow(&a, &(&m + &n), &mut led);
            let rhs = f.mul(&f.pow(&a, &m, &mut led), &f.pow(&a, &n, &mut led), &mut led);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pow_ledger_counts() {
        let f = toy_field();
        let mut led = CostLedger::new();
        let a = f.from_u64(17);
        // e = 0b1001_0001: 8 bits, weight 3 -> 7 squarings, 2 multiplications
        let before = led.snapshot();
        f.pow(&a, &BigUint::from(0b1001_0001u32), &mut led);
        let d = led.diff(before);
        assert_eq!((d.s1, d.m1, d.i1), (7, 2, 0));
    }

    #[test]
    fn residue_tests() {
        let f = toy_field();
        let mut led = CostLedger::new();
        assert!(!f.is_cubic_nonresidue(&f.one()).unwrap());
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(10);
        for _ in 0..30 {
            let g = f.random(&mut rng);
            if g.is_zero() {
                continue;
            }
            let cube = f.mul(&f.square(&g, &mut led), &g, &mut led);
            assert!(!f.is_cubic_nonresidue(&cube).unwrap());
            let e = BigUint::from(5u32);
            let fifth = f.pow(&g, &e, &mut led);
            assert!(!f.is_fifth_nonresidue(&fifth).unwrap());
        }
    }

    #[test]
    fn sqrt_paths() {
        let f = toy_field();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        let mut led = CostLedger::new();
        assert_eq!(f.sqrt(&f.zero()), Some(f.zero()));
        let mut seen_nonresidue = false;
        for _ in 0..50 {
            let g = f.random(&mut rng);
            let sq = f.square(&g, &mut led);
            let s = f.sqrt(&sq).expect("constructed square has a root");
            assert!(s == g || s == f.neg(&g));
            let r = f.random(&mut rng);
            if !r.is_zero() && !f.is_square(&r) {
                seen_nonresidue = true;
                assert!(f.sqrt(&r).is_none());
            }
        }
        assert!(seen_nonresidue);
    }

    #[test]
    fn hex_round_trip() {
        let f = toy_field();
        let a = f.from_u64(0xabc % 2551);
        let h = f.to_hex(&a);
        assert_eq!(h.len(), 4); // 2551 is 2 bytes wide
        assert_eq!(f.from_hex(&h).unwrap(), a);
    }

    #[test]
    fn field_associativity_distributivity_random() {
        let f = toy_field();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(12);
        let mut led = CostLedger::new();
        for _ in 0..1000 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let c = f.random(&mut rng);
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(
                f.mul(&f.mul(&a, &b, &mut led), &c, &mut led),
                f.mul(&a, &f.mul(&b, &c, &mut led), &mut led)
            );
            assert_eq!(f.mul(&a, &b, &mut led), f.mul(&b, &a, &mut led));
            let lhs = f.mul(&a, &f.add(&b, &c), &mut led);
            let rhs = f.add(&f.mul(&a, &b, &mut led), &f.mul(&a, &c, &mut led));
            assert_eq!(lhs, rhs);
        }
    }
}
