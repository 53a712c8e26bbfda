//! Exact scalar fields: the rationals and prime fields of word size.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use super::LaError;

/// The field of rational numbers with arbitrary precision numerators and denominators.
pub type Q = BigRational;

/// An exact commutative field usable as the scalar domain of every computation in the crate.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Characteristic of the field (0 for the rationals).
    fn characteristic() -> u64;

    /// Human readable scalar mode tag, e.g. `rational` or `fp(2147483647)`.
    fn mode_name() -> String;

    /// Embeds a machine integer.
    fn from_i64(v: i64) -> Self;

    /// Embeds a rational number; fails in characteristic p when p divides the denominator.
    fn from_rational(q: &BigRational) -> Result<Self, LaError>;

    /// Multiplicative inverse. Panics on zero, which is always an internal logic error.
    fn inv(&self) -> Self;

    /// Canonical exact textual form (`num/den` for rationals, the residue for prime fields).
    fn to_exact_string(&self) -> String;

    /// `self += a * b` without needless clones where the representation allows it.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a.clone() * b.clone();
    }

    /// `self -= a * b`.
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a.clone() * b.clone();
    }

    /// Parses `n`, `-n` or `n/d` into the field.
    fn parse_exact(s: &str) -> Result<Self, LaError> {
        Self::from_rational(&parse_rational(s)?)
    }
}

/// Parses an exact rational literal of the form `n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<BigRational, LaError> {
    let s = s.trim();
    let bad = || LaError::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(LaError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical `num/den` rendering of a rational number.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl Field for BigRational {
    fn characteristic() -> u64 {
        0
    }

    fn mode_name() -> String {
        "rational".to_string()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &BigRational) -> Result<Self, LaError> {
        Ok(q.clone())
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn to_exact_string(&self) -> String {
        rational_string(self)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
}

/// Residues modulo the prime `P`, with `P < 2^32` so that products fit in `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

/// The Mersenne prime 2^31 - 1.
pub const PRIME_A: u64 = 2_147_483_647;
/// The largest prime below 2^31 - 1.
pub const PRIME_B: u64 = 2_147_483_629;
/// A third prime close to 2^31.
pub const PRIME_C: u64 = 2_147_483_587;

/// Prime field with modulus [`PRIME_A`].
pub type Fa = Fp<PRIME_A>;
/// Prime field with modulus [`PRIME_B`].
pub type Fb = Fp<PRIME_B>;
/// Prime field with modulus [`PRIME_C`].
pub type Fc = Fp<PRIME_C>;

/// The primes accepted by the prime-field scalar mode.
pub const SUPPORTED_PRIMES: [u64; 3] = [PRIME_A, PRIME_B, PRIME_C];

impl<const P: u64> Fp<P> {
    /// Reduces an arbitrary unsigned integer.
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    /// The canonical residue in `0..P`.
    pub fn residue(&self) -> u64 {
        self.0
    }

    fn pow(mut self, mut e: u64) -> Self {
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc *= self;
            }
            self = self * self;
            e >>= 1;
        }
        acc
    }

    fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(P);
        let r = ((v % &m) + &m) % &m;
        Fp(r.to_u64().expect("residue fits in u64"))
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn characteristic() -> u64 {
        P
    }

    fn mode_name() -> String {
        format!("fp({P})")
    }

    fn from_i64(v: i64) -> Self {
        let m = P as i64;
        Fp((((v % m) + m) % m) as u64)
    }

    fn from_rational(q: &BigRational) -> Result<Self, LaError> {
        let d = Self::from_bigint(q.denom());
        if d.is_zero() {
            return Err(LaError::DenominatorVanishes { value: rational_string(q), prime: P });
        }
        Ok(Self::from_bigint(q.numer()) * d.inv())
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }

    fn to_exact_string(&self) -> String {
        self.0.to_string()
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += *a * *b;
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= *a * *b;
    }
}

/// Returns true when `v` is prime (trial division; used only to validate configured moduli).
pub fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= v {
        if v.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn configured_moduli_are_prime() {
        for p in SUPPORTED_PRIMES {
            assert!(is_prime(p), "{p}");
            assert!(p < (1u64 << 32));
        }
    }

    #[test]
    fn prime_field_inverse_and_negation() {
        let x = Fa::from_i64(-5);
        assert_eq!(x + Fa::from_i64(5), Fa::zero());
        assert_eq!(x * x.inv(), Fa::one());
        assert_eq!(-Fa::zero(), Fa::zero());
    }

    #[test]
    fn rational_embedding_into_prime_field() {
        let q = parse_rational("3/7").unwrap();
        let x = Fb::from_rational(&q).unwrap();
        assert_eq!(x * Fb::from_i64(7), Fb::from_i64(3));
        let bad = BigRational::new(BigInt::from(1), BigInt::from(PRIME_B));
        assert!(Fb::from_rational(&bad).is_err());
    }

    #[test]
    fn rational_parsing_is_canonical() {
        let q = parse_rational("-4/6").unwrap();
        assert_eq!(rational_string(&q), "-2/3");
        assert_eq!(Q::parse_exact("5").unwrap(), Q::from_i64(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
