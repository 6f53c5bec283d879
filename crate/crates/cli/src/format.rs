//! Fixed textual renderings of numbers.

/// Nine significant digits. Plain decimal notation for magnitudes in
/// `[1e-5, 1e9)`, scientific otherwise.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    // rounding is already applied here, so the exponent is final
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if (-5..=8).contains(&exp) {
        format!("{:.*}", (8 - exp) as usize, x)
    } else {
        sci
    }
}

/// Nine decimals, used for the key=value command output.
pub fn fixed9(x: f64) -> String {
    format!("{x:.9}")
}
