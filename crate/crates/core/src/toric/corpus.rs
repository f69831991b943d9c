//! Small named fans used as test data.

use super::Fan;

fn fan(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        dim,
        rays.iter().map(|r| r.to_vec()).collect(),
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .expect("corpus fan is valid")
}

fn triangle(rays: &[&[i64]]) -> Fan {
    fan(2, rays, &[&[0, 1], &[1, 2], &[0, 2]])
}

pub fn p2() -> Fan {
    triangle(&[&[1, 0], &[0, 1], &[-1, -1]])
}

pub fn p112() -> Fan {
    triangle(&[&[1, 0], &[0, 1], &[-1, -2]])
}

pub fn p113() -> Fan {
    triangle(&[&[1, 0], &[0, 1], &[-1, -3]])
}

pub fn p123() -> Fan {
    triangle(&[&[1, 0], &[0, 1], &[-2, -3]])
}

/// Blow-up of P^2 at a torus-fixed point; ray 3 is the exceptional one.
pub fn blp2() -> Fan {
    fan(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
        &[&[0, 3], &[1, 3], &[1, 2], &[0, 2]],
    )
}

pub fn p1xp1() -> Fan {
    fan(
        2,
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
    )
}

/// Cone over the square with vertices `(±1, 0)`, `(0, ±1)` at height one;
/// Gorenstein, not simplicial, with `(0, 0, 1)` in its interior.
pub fn square_cone() -> Fan {
    fan(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]], &[&[0, 1, 2, 3]])
}

const CIRCUIT_FLIP: [&[i64]; 4] = [&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 2, -1]];
const CIRCUIT_FLOP: [&[i64]; 4] = [&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1]];

/// Local flip over the circuit `v1 + 2 v2 = v3 + v4`, source side. This
/// example was built for the test suite, not taken from the literature.
pub fn flip_a() -> Fan {
    fan(3, &CIRCUIT_FLIP, &[&[0, 2, 3], &[1, 2, 3]])
}

/// Target side of [`flip_a`].
pub fn flip_b() -> Fan {
    fan(3, &CIRCUIT_FLIP, &[&[0, 1, 2], &[0, 1, 3]])
}

/// Atiyah flop over `v1 + v2 = v3 + v4`.
pub fn flop_a() -> Fan {
    fan(3, &CIRCUIT_FLOP, &[&[0, 2, 3], &[1, 2, 3]])
}

pub fn flop_b() -> Fan {
    fan(3, &CIRCUIT_FLOP, &[&[0, 1, 2], &[0, 1, 3]])
}

/// Every named fan.
pub fn all() -> Vec<(&'static str, Fan)> {
    vec![
        ("p2", p2()),
        ("p112", p112()),
        ("p113", p113()),
        ("p123", p123()),
        ("blp2", blp2()),
        ("p1xp1", p1xp1()),
        ("square_cone", square_cone()),
        ("flip_a", flip_a()),
        ("flip_b", flip_b()),
        ("flop_a", flop_a()),
        ("flop_b", flop_b()),
    ]
}

pub fn by_name(name: &str) -> Option<Fan> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, f)| f)
}
