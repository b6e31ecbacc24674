//! Number and object formatting for reports and CSV.

use std::fmt::Write;

use lindblad2_core::forms::Term;
use lindblad2_core::{ComplexMatrix2, FormB, Mat3, Vec3};
use num_complex::Complex64;

/// Up to ten decimals with trailing zeros removed; values below `5e-13` in
/// magnitude print as `0`.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let y = if x.abs() < 5e-13 { 0.0 } else { x };
    let s = format!("{y:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// Seventeen significant digits, for CSV.
pub fn full(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Short scientific notation for residuals and margins.
pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn complex(z: Complex64) -> String {
    let (re, im) = (num(z.re), num(z.im));
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}{im}i"),
        _ => format!("{re}+{im}i"),
    }
}

pub fn vec3(v: &Vec3) -> String {
    format!("({},{},{})", num(v[0]), num(v[1]), num(v[2]))
}

pub fn mat3(m: &Mat3) -> String {
    let row = |i: usize| format!("[{}, {}, {}]", num(m[(i, 0)]), num(m[(i, 1)]), num(m[(i, 2)]));
    format!("[{}, {}, {}]", row(0), row(1), row(2))
}

pub fn cmat3(m: &[[Complex64; 3]; 3]) -> String {
    let row = |r: &[Complex64; 3]| format!("[{}, {}, {}]", complex(r[0]), complex(r[1]), complex(r[2]));
    format!("[{}, {}, {}]", row(&m[0]), row(&m[1]), row(&m[2]))
}

pub fn cmat2(m: &ComplexMatrix2) -> String {
    let e = &m.0;
    format!(
        "[[{}, {}], [{}, {}]]",
        complex(e[0][0]),
        complex(e[0][1]),
        complex(e[1][0]),
        complex(e[1][1])
    )
}

/// `n` and `−n` describe the same term; print the one whose largest
/// component is positive.
pub fn canonical_axis(n: Vec3) -> Vec3 {
    let k = (0..3).fold(0, |b, i| if n[i].abs() > n[b].abs() + 1e-12 { i } else { b });
    if n[k] < 0.0 { n.map(|x| -x) } else { n }
}

pub fn term(t: &Term) -> String {
    format!("(λ={}, n={})", num(t.lambda), vec3(&canonical_axis(t.axis.get())))
}

pub fn terms(fb: &FormB) -> String {
    let mut s = String::new();
    for (i, t) in fb.terms().iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{}", term(t));
    }
    s
}
