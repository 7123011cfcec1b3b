use dpgit::config::TruncationPolicy;
use dpgit::input::parse;
use dpgit::singular::{profile_cubic, profile_double_cover, profile_pencil, profile_plane_curve, Base, QuadricPencil};

fn cubic(src: &str) -> String {
    let d = parse(&format!("ring P^3 vars x0 x1 x2 x3\npoly {src}")).unwrap();
    profile_cubic(d.polys()[0]).unwrap().summary()
}

fn cover(base: &str, src: &str) -> String {
    let d = parse(&format!("ring {base} vars x y z\nbranch {src}")).unwrap();
    let b = Base::from_weights(&d.ring.as_ref().unwrap().weights().unwrap()).unwrap();
    profile_double_cover(b, d.branch().unwrap(), TruncationPolicy::default()).unwrap().summary()
}

fn pencil(q1: &str, q2: &str) -> String {
    let d = parse(&format!("ring P^4 vars x0 x1 x2 x3 x4\npoly {q1}\npoly {q2}")).unwrap();
    let p = d.polys();
    profile_pencil(&QuadricPencil::from_quadrics(p[0], p[1]).unwrap()).unwrap().summary()
}

#[test]
fn cubic_surfaces() {
    assert_eq!(cubic("x0^3 + x1^3 + x2^3 + x3^3"), "smooth");
    assert_eq!(cubic("x1*x2*x3 - x0^3"), "3A2");
    assert_eq!(cubic("x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x1*x2*x3"), "4A1");
    assert_eq!(cubic("x3*x0^2 + x1^3 + x2^3"), "D4");
    assert_eq!(cubic("x0^3 + x1^3 + x2^3"), "WorseThanADE");
}

#[test]
fn quartic_pencils() {
    assert_eq!(pencil("x0*x1 - x2^2", "x2^2 - x3*x4"), "4A1");
    assert_eq!(pencil("x0^2 + x1^2 + x2^2 + x3^2 + x4^2", "x1^2 + 2*x2^2 + 3*x3^2 + 4*x4^2"), "smooth");
    assert_eq!(pencil("x0^2 + x1^2 + x2^2 + x3^2 + x4^2", "x2^2 + 2*x3^2 + 3*x4^2"), "2A1");
}

#[test]
fn double_covers() {
    assert_eq!(cover("P(1,1,4)", "z^2 - x^4*y^4"), "2A3+2x1/4(1,1)");
    assert_eq!(cover("P(1,2,9)", "y^9 - z^2"), "A8+2x1/9(1,2)");
    assert_eq!(cover("P(1,1,2)", "z^2*x^2 + z*y^4"), "A7+1/8(1,3)");
    assert_eq!(cover("P(1,1,2)", "z^2*x*y + x^3*y^3"), "2D4+1/4(1,1)");
    assert_eq!(cover("P^2", "x*y*(z^2 - 4*x*y)"), "A1+2A3");
    assert_eq!(cover("P^2", "(z^2 + x*y)*(z^2 - x*y)"), "2A3");
    assert_eq!(cover("P^2", "z^2*(z^2 + x*y)"), "non-normal");
}

#[test]
fn plane_quartics() {
    let d = parse("ring P^2 vars x y z\npoly (x*z - y^2)*(x*z + y^2)").unwrap();
    let p = profile_plane_curve(d.polys()[0], TruncationPolicy::default()).unwrap();
    assert_eq!(p.summary(), "2A3");
}
