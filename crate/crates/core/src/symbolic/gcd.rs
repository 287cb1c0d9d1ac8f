//! Multivariate gcd over ℚ: recursive content/primitive-part split with the
//! subresultant remainder sequence over ℤ[remaining variables].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Polynomial, Var, Q};

/// `p = scalar · primitive`, where `primitive` has coprime integer coefficients
/// and a positive leading coefficient.
pub(crate) fn integer_primitive(p: &Polynomial) -> (Q, Polynomial) {
    if p.is_zero() {
        return (Q::one(), Polynomial::zero());
    }
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let mut num = BigInt::zero();
    for (_, c) in p.terms() {
        num = num.gcd(&(c * Q::from_integer(den.clone())).to_integer());
    }
    let mut scalar = Q::new(num, den);
    if p.leading_coeff().is_negative() {
        scalar = -scalar;
    }
    let prim = p.scale(&scalar.recip());
    (scalar, prim)
}

/// Greatest common divisor, normalized to a primitive integer polynomial with
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return integer_primitive(b).1;
    }
    if b.is_zero() {
        return integer_primitive(a).1;
    }
    let (_, a) = integer_primitive(a);
    let (_, b) = integer_primitive(b);
    integer_primitive(&gcd_primitive(&a, &b)).1
}

// Inputs have integer coefficients; result has integer coefficients (content
// over ℤ is not tracked; callers only need the gcd up to a rational unit).
fn gcd_primitive(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Polynomial::one();
    }
    if a == b {
        return a.clone();
    }
    let va = a.vars();
    let vb = b.vars();
    let main = match va.0.iter().chain(vb.0.iter()).copied().max() {
        Some(v) => v,
        None => return Polynomial::one(),
    };
    match (va.contains(main), vb.contains(main)) {
        (true, false) => gcd_primitive(&content_in(a, main), b),
        (false, true) => gcd_primitive(a, &content_in(b, main)),
        _ => {
            if a.div_exact(b).is_some() {
                return b.clone();
            }
            if b.div_exact(a).is_some() {
                return a.clone();
            }
            let ca = content_in(a, main);
            let cb = content_in(b, main);
            let pa = a.div_exact(&ca).expect("content divides");
            let pb = b.div_exact(&cb).expect("content divides");
            let c = gcd_primitive(&ca, &cb);
            let g = subresultant(&pa, &pb, main);
            let g = if g.degree_in(main) == 0 {
                Polynomial::one()
            } else {
                let cg = content_in(&g, main);
                g.div_exact(&cg).expect("content divides")
            };
            integer_primitive(&(&c * &g)).1
        }
    }
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Polynomial, v: Var) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { integer_primitive(&c).1 } else { gcd_primitive(&acc, &integer_primitive(&c).1) };
        if acc.as_constant().is_some() {
            return Polynomial::one();
        }
    }
    integer_primitive(&acc).1
}

type Uni = Vec<Polynomial>;

fn deg(u: &Uni) -> usize {
    u.len() - 1
}

fn trim(mut u: Uni) -> Uni {
    while u.len() > 1 && u.last().is_some_and(Polynomial::is_zero) {
        u.pop();
    }
    if u.is_empty() {
        u.push(Polynomial::zero());
    }
    u
}

fn is_zero(u: &Uni) -> bool {
    u.len() == 1 && u[0].is_zero()
}

fn prem(a: &Uni, b: &Uni) -> Uni {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut steps = 0usize;
    let delta = deg(a) + 1 - db;
    while !is_zero(&r) && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Uni = r.iter().map(|c| c * &lb).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(bc * &lr);
        }
        r = trim(next);
        steps += 1;
    }
    if steps < delta {
        let f = lb.pow((delta - steps) as u32);
        r = r.iter().map(|c| c * &f).collect();
    }
    r
}

fn subresultant(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let mut a = trim(a.coefficients_in(v));
    let mut b = trim(b.coefficients_in(v));
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if is_zero(&r) {
            return Polynomial::from_coefficients_in(v, &b);
        }
        if deg(&r) == 0 {
            return Polynomial::one();
        }
        let div = &g * &h.pow(delta);
        a = b;
        b = r.iter().map(|c| c.div_exact(&div).expect("subresultant division is exact")).collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn gcd_of_products() {
        let a = p("(h1 + h2)*(h1 - 2*hbar)^2*(s1 + 3)");
        let b = p("(h1 - 2*hbar)*(s1 + 3)*(h2 - h1)");
        assert_eq!(gcd(&a, &b), integer_primitive(&p("(h1 - 2*hbar)*(s1 + 3)")).1);
    }

    #[test]
    fn coprime_inputs() {
        assert_eq!(gcd(&p("h1^2 + h2^2"), &p("h1 + h2")), Polynomial::one());
        assert_eq!(gcd(&p("6*h1"), &p("4*h1^2")), p("h1"));
    }
}
