use super::{blow_up, product_block, Block, Parity, TrackedSurface};

/// Mumford's fake projective plane with the genus 3 surface `H` in the
/// class `L`, where `K = 3L` and `L² = 1`.
pub fn mumford_m() -> Block {
    let mut b = Block::new("M", 3, 1);
    b.b1 = Some(0);
    b.symplectic = true;
    b.almost_complex = true;
    b.minimal = Some(true);
    b.minimal_note = Some("minimal surface of general type".into());
    b.set_parity(Parity::Odd, "intersection form (1)");
    b.diagonal_form = Some((1, 0));
    b.surfaces.push(TrackedSurface::new("H", 3, 1, Some(3)));
    b.provenance.push("builtin fake projective plane".into());
    b
}

/// `M # CP̄²` blown up once on `H`, leaving `H` of square 0.
pub fn mumford_blown_up() -> Block {
    let mut b = blow_up(&mumford_m(), Some(("H", 1))).expect("H is tracked");
    b.name = "M#CP2bar".into();
    b
}

/// Cartwright–Steger surface `M_n`, an `n`-fold cover of `M_1`.
///
/// Only `M_1` has a known `b1` and intersection form.
pub fn cs_surface(n: u32) -> Block {
    let ni = i64::from(n);
    let mut b = Block::new(&format!("M_{n}"), 3 * ni, ni);
    b.symplectic = true;
    b.almost_complex = true;
    b.minimal = Some(true);
    b.minimal_note = Some("minimal surface of general type".into());
    if n == 1 {
        b.b1 = Some(2);
        b.diagonal_form = Some((3, 2));
        b.set_parity(Parity::Odd, "intersection form 3(1)+2(-1)");
    }
    b.provenance
        .push(format!("builtin Cartwright-Steger surface, {n}-fold cover"));
    b
}

pub fn builtin_blocks() -> Vec<Block> {
    let mut out = vec![mumford_m(), mumford_blown_up()];
    out.extend((1..=3).map(cs_surface));
    out.extend([(2, 0), (2, 2), (2, 3), (3, 1)].map(|(g, h)| product_block(g, h)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geography::homology_profile;
    use num_rational::Rational64;

    #[test]
    fn mumford_invariants() {
        let c = mumford_m().char_numbers();
        assert_eq!((c.chi_h, c.c1sq, c.on_bmy_line), (Rational64::from(1), 9, true));
        let mb = mumford_blown_up();
        assert_eq!((mb.euler, mb.signature), (4, 0));
        assert_eq!(mb.minimal, Some(false));
    }

    #[test]
    fn cs_surfaces_on_bmy_line() {
        for n in 1..=6 {
            let c = cs_surface(n).char_numbers();
            assert_eq!(c.c1sq, 9 * i64::from(n));
            assert!(c.on_bmy_line);
        }
    }

    #[test]
    fn cs_one_betti_consistency() {
        let b = cs_surface(1);
        let p = homology_profile(&b).unwrap();
        assert_eq!((p.b2, p.b2_plus, p.b2_minus), (5, 3, 2));
        assert_eq!(b.diagonal_form, Some((3, 2)));
    }

    #[test]
    fn catalog_validates() {
        for b in builtin_blocks() {
            b.validate().unwrap();
        }
    }
}
