//! Dense polynomials over the prime field GF(p), coefficients stored constant term first.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q` as `p^m` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, m))
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut result = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Remainder of `a` modulo `b` over GF(p). `b` must be nonzero.
pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.iter().map(|c| c % p).collect();
    let mut b: Vec<u64> = b.iter().map(|c| c % p).collect();
    trim(&mut r);
    trim(&mut b);
    let lead_inv = inv_mod(*b.last().expect("division by zero polynomial"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let coef = r[r.len() - 1] * lead_inv % p;
        for (i, bc) in b.iter().enumerate() {
            let slot = &mut r[shift + i];
            *slot = (*slot + p - coef * bc % p) % p;
        }
        trim(&mut r);
    }
    r
}

/// Monic polynomial of the given degree whose lower coefficients are the base-`p` digits of `index`.
pub fn monic_from_index(index: u64, degree: u32, p: u64) -> Vec<u64> {
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    let mut rest = index;
    for _ in 0..degree {
        coeffs.push(rest % p);
        rest /= p;
    }
    coeffs.push(1);
    coeffs
}

/// Irreducibility by trial division with every monic polynomial of degree up to half.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let degree = f.len().saturating_sub(1) as u32;
    if degree == 0 {
        return false;
    }
    for d in 1..=degree / 2 {
        for index in 0..p.pow(d) {
            let g = monic_from_index(index, d, p);
            if rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of `degree` in enumeration order (highest free coefficient most significant).
pub fn smallest_irreducible(degree: u32, p: u64) -> Vec<u64> {
    (0..p.pow(degree))
        .map(|index| monic_from_index(index, degree, p))
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}
