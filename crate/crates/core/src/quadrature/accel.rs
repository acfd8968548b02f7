use super::Scalar;

/// Cohen-Villegas-Zagier acceleration of sum_{k>=0} (-1)^k a_k using the terms given.
pub fn cvz_alternating<T: Scalar>(a: &[T]) -> T {
    let n = a.len();
    if n == 0 {
        return T::zero();
    }
    let nf = n as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(nf);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = T::zero();
    for (k, ak) in a.iter().enumerate() {
        let kf = k as f64;
        c = b - c;
        s += *ak * c;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s * (1.0 / d)
}
