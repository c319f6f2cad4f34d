//! Dense polynomials over a prime field, used to validate moduli and to
//! pick default ones. Coefficients are stored low degree first.

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Remainder of `a` modulo `f` (f need not be monic, only nonzero).
fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p) as u64;
    while r.len() > df {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - df;
        for (i, &fi) in f.iter().enumerate() {
            let sub = c * fi as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    rem(&prod, f, p)
}

pub(crate) fn pow_poly(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// X^(p^k) mod f.
fn frobenius_x(k: u32, f: &[u32], p: u32) -> Vec<u32> {
    let mut h = rem(&[0, 1], f, p);
    for _ in 0..k {
        h = pow_poly(&h, p as u64, f, p);
    }
    h
}

/// Rabin's irreducibility test for a monic `f` of degree >= 1.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let x = [0u32, 1];
    if sub(&frobenius_x(n as u32, f, p), &x, p) != Vec::<u32>::new() {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let h = sub(&frobenius_x(n as u32 / r as u32, f, p), &x, p);
        gcd(f, &h, p).len() == 1
    })
}

/// Whether the residue of X generates the multiplicative group of F_p[X]/(f).
pub(crate) fn x_is_primitive(f: &[u32], p: u32) -> bool {
    let n = (f.len() - 1) as u32;
    let order = (p as u64).pow(n) - 1;
    prime_factors(order)
        .into_iter()
        .all(|r| pow_poly(&[0, 1], order / r, f, p) != vec![1])
}

/// Built-in default moduli (Conway polynomials), low degree first.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 10, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (3, 8, &[2, 2, 2, 0, 1, 2, 0, 0, 1]),
    (3, 10, &[2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1]),
    (3, 12, &[2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (5, 6, &[2, 0, 1, 4, 1, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
    (11, 1, &[9, 1]),
    (11, 2, &[2, 7, 1]),
];

pub(crate) fn table_modulus(p: u32, n: u32) -> Option<Vec<u32>> {
    DEFAULT_MODULI
        .iter()
        .find(|(pp, nn, _)| *pp == p && *nn == n)
        .map(|(_, _, c)| c.to_vec())
}

/// All (p, n) pairs carried by the built-in table.
pub fn default_modulus_table() -> impl Iterator<Item = (u32, u32, &'static [u32])> {
    DEFAULT_MODULI.iter().copied()
}

/// Default modulus for F_{p^n}: the table entry, else the first primitive
/// polynomial in lexicographic order of its lower coefficients.
pub(crate) fn default_modulus(p: u32, n: u32) -> Vec<u32> {
    if let Some(f) = table_modulus(p, n) {
        return f;
    }
    let n = n as usize;
    let total = (p as u64).pow(n as u32);
    for code in 1..total {
        let mut f = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..n {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) && x_is_primitive(&f, p) {
            return f;
        }
    }
    unreachable!("a primitive polynomial exists for every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(11));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(0));
        assert_eq!(prime_factors(531440), vec![2, 5, 7, 13, 73]);
    }

    #[test]
    fn table_entries_are_primitive() {
        for (p, n, f) in default_modulus_table() {
            assert_eq!(f.len() as u32, n + 1);
            assert!(is_irreducible(f, p), "({p},{n}) reducible");
            assert!(x_is_primitive(f, p), "({p},{n}) not primitive");
        }
    }

    #[test]
    fn reducible_detected() {
        // (x+1)^2 over F_2
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^4 + x^3 + x^2 + x + 1 over F_2 is irreducible but X has order 5
        assert!(is_irreducible(&[1, 1, 1, 1, 1], 2));
        assert!(!x_is_primitive(&[1, 1, 1, 1, 1], 2));
    }

    #[test]
    fn search_fallback_finds_primitive() {
        let f = default_modulus(13, 2);
        assert!(is_irreducible(&f, 13) && x_is_primitive(&f, 13));
    }
}
