use sphere_green::params::*;
use sphere_green::SphereDim;

fn main() {
    let p = GreenParameter::from_l(SphereDim::new(3).unwrap(), 0.4).unwrap();
    let c = partial_fraction_coeffs(&p).unwrap();
    for l in [1.0f64, 2.0, 10.0, 100.0, 1000.0] {
        let r = decomposition_residual(&p, l, &c).unwrap();
        let lhs = 1.0 / p.denominator(l);
        println!("l={l}: residual={r:.3e} lhs={lhs:.3e} rel={:.3e}", r / lhs);
    }
}
