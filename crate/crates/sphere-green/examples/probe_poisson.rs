use sphere_green::poisson::{poisson_kernel, poisson_kernel_series};
use sphere_green::SphereDim;

fn main() {
    for n in [2u32, 3, 4, 6] {
        let dim = SphereDim::new(n).unwrap();
        let mut worst_abs = 0.0f64;
        let mut worst_rel = 0.0f64;
        let mut worst_at = (0.0, 0.0);
        for ri in 1..=10 {
            let r = if ri == 10 { 0.99 } else { ri as f64 * 0.1 };
            for j in 0..20 {
                let t = -0.95 + 0.1 * j as f64;
                let s = poisson_kernel_series(r, t, dim, 1e-14).unwrap();
                let c = poisson_kernel(r, t, dim).unwrap();
                let d = (s - c).abs();
                if d > worst_abs {
                    worst_abs = d;
                    worst_at = (r, t);
                }
                worst_rel = worst_rel.max(d / c.abs().max(1.0));
            }
        }
        println!("n={n}: worst abs={worst_abs:.3e} at (r,t)={worst_at:?}, worst relmax={worst_rel:.3e}");
    }
}
