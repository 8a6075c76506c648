//! Arithmetic in GF(p^e), elements stored as coefficient vectors packed into
//! a base-p integer (constant coefficient least significant).

/// Prime factorization in increasing prime order.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, e))` when `q = p^e` with `e >= 1`.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    match factorize(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub(crate) struct GaloisField {
    p: usize,
    degree: usize,
    /// Monic modulus, low coefficient first, length `degree + 1`.
    modulus: Vec<usize>,
}

impl GaloisField {
    /// Panics if `order` is not a prime power.
    pub fn new(order: usize) -> Self {
        let (p, e) = prime_power(order).expect("field order must be a prime power");
        let degree = e as usize;
        let modulus = if degree == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, degree)
        };
        GaloisField { p, degree, modulus }
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        for d in out.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[usize]) -> usize {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.degree == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&sum)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if self.degree == 1 {
            return (a * b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0; 2 * self.degree - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        poly_rem_monic(&mut prod, &self.modulus, self.p);
        prod.truncate(self.degree);
        self.pack(&prod)
    }
}

/// Reduce `a` in place modulo the monic polynomial `m` over GF(p).
fn poly_rem_monic(a: &mut [usize], m: &[usize], p: usize) {
    let dm = m.len() - 1;
    for top in (dm..a.len()).rev() {
        let coef = a[top];
        if coef == 0 {
            continue;
        }
        for (k, &mk) in m.iter().enumerate() {
            let idx = top - dm + k;
            a[idx] = (a[idx] + (p - coef) * mk) % p;
        }
    }
}

fn monic_from_index(p: usize, degree: usize, mut idx: usize) -> Vec<usize> {
    let mut coeffs = vec![0; degree + 1];
    for c in coeffs.iter_mut().take(degree) {
        *c = idx % p;
        idx /= p;
    }
    coeffs[degree] = 1;
    coeffs
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let degree = f.len() - 1;
    for d in 1..=degree / 2 {
        for idx in 0..p.pow(d as u32) {
            let g = monic_from_index(p, d, idx);
            let mut r = f.to_vec();
            poly_rem_monic(&mut r, &g, p);
            if r[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of the given degree, comparing the
/// non-leading coefficients as a base-p number.
fn smallest_irreducible(p: usize, degree: usize) -> Vec<usize> {
    (0..p.pow(degree as u32))
        .map(|idx| monic_from_index(p, degree, idx))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizes() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn known_moduli() {
        // x^2 + x + 1 over GF(2), x^3 + x + 1 over GF(2), x^2 + 1 over GF(3)
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = GaloisField::new(q);
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.mul(a, 0), 0);
                if a != 0 {
                    let inverses = (1..q).filter(|&b| f.mul(a, b) == 1).count();
                    assert_eq!(inverses, 1, "q={q} a={a}");
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [0, 1, q - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
