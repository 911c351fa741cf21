//! Principal branch of the Lambert W function on `x ≥ 0`.

use crate::error::{Error, Result};

use super::dd::Dd;

/// `W(x)` as a double-double, so the defining relation holds to ~1e-25 relative.
///
/// Newton from `ln(1 + x)` in `f64`, then two Newton steps in double-double.
pub fn lambert_w_dd(x: f64) -> Result<Dd> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::BadRange(format!("Lambert W needs finite x ≥ 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(Dd::ZERO);
    }
    let mut w = x.ln_1p();
    for _ in 0..100 {
        let e = w.exp();
        let step = (w * e - x) / (e * (w + 1.0));
        w -= step;
        if step.abs() <= 1e-15 * w.abs() {
            break;
        }
    }
    let mut wd = Dd::from(w);
    for _ in 0..2 {
        let e = wd.exp();
        let r = wd * e - x;
        wd = wd - r / (e * (wd + 1.0));
    }
    Ok(wd)
}

pub fn lambert_w(x: f64) -> Result<f64> {
    Ok(lambert_w_dd(x)?.to_f64())
}

/// `|W e^W − x|` evaluated in double-double.
pub fn lambert_residual(x: f64) -> Result<f64> {
    let w = lambert_w_dd(x)?;
    Ok((w * w.exp() - x).abs().to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
        assert!((lambert_w(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-15);
        assert!(lambert_w(-1.0).is_err());
        assert!(lambert_w(f64::NAN).is_err());
    }

    #[test]
    fn reference_values() {
        // Double-double splits of W(x) from a 50-digit evaluation.
        for (x, hi, lo) in [
            (1e6, 11.383358086140053, -1.1198090832126788e-16),
            (1e3, 5.249602852401596, 3.73277608005459e-16),
        ] {
            let w = lambert_w_dd(x).unwrap();
            assert_eq!(w.hi, hi);
            assert!((w.lo - lo).abs() < 1e-30, "{x}: {} vs {lo}", w.lo);
        }
    }

    #[test]
    fn residual_on_log_grid() {
        for i in 0..100 {
            let x = 10f64.powf(-3.0 + 9.0 * i as f64 / 99.0);
            assert!(lambert_residual(x).unwrap() <= 1e-12, "x = {x}");
        }
    }
}
