//! Built-in fans.

use crate::fan::Fan;

/// Names accepted by [`by_name`], in catalog order.
pub const NAMES: [&str; 9] = ["P1", "P2", "P1xP1", "F0", "F1", "F2", "F3", "P1xP2", "BlP2"];

fn build(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        dim,
        rays.iter().map(|r| r.to_vec()).collect(),
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .expect("catalog fans are well formed")
}

pub fn p1() -> Fan {
    build(1, &[&[1], &[-1]], &[&[0], &[1]])
}

pub fn p2() -> Fan {
    build(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
}

/// Rays ordered `e1, e2, -e1, -e2`.
pub fn p1xp1() -> Fan {
    hirzebruch(0)
}

/// The Hirzebruch surface with rays `(1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch(a: i64) -> Fan {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
}

/// Rays `e1, -e1` from the line and `e2, e3, -e2-e3` from the plane.
pub fn p1xp2() -> Fan {
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for a in [0, 1] {
        for pair in [[2, 3], [3, 4], [2, 4]] {
            cones.push(vec![a, pair[0], pair[1]]);
        }
    }
    Fan::new(
        3,
        vec![vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![0, -1, -1]],
        cones,
    )
    .expect("catalog fans are well formed")
}

/// The plane blown up at the torus-fixed point of the cone `{e1, e2}`.
pub fn blp2() -> Fan {
    build(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
}

pub fn by_name(name: &str) -> Option<Fan> {
    Some(match name {
        "P1" => p1(),
        "P2" => p2(),
        "P1xP1" => p1xp1(),
        "F0" => hirzebruch(0),
        "F1" => hirzebruch(1),
        "F2" => hirzebruch(2),
        "F3" => hirzebruch(3),
        "P1xP2" => p1xp2(),
        "BlP2" => blp2(),
        _ => return None,
    })
}

pub fn all() -> Vec<(&'static str, Fan)> {
    NAMES.iter().map(|&n| (n, by_name(n).expect("listed name"))).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn catalog_fans_are_smooth_and_complete() {
        for (name, fan) in super::all() {
            assert!(fan.validate().is_ok(), "{name}");
        }
    }
}
