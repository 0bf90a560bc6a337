use super::{Block, CharNumbers, GeoError, Parity, Profile, TrackedSurface};
use crate::presentation::{product_presentation, SurgeryDatum, Word};

/// Blow up a point, optionally on a tracked surface passing through it with
/// the given multiplicity. A point of multiplicity `m` is treated as an
/// ordinary `m`-fold point, so the proper transform loses `m(m−1)/2` genus.
///
/// The new exceptional sphere is labelled `E1`, `E2`, … in order.
pub fn blow_up(block: &Block, through: Option<(&str, u32)>) -> Result<Block, GeoError> {
    let mut out = block.clone();
    out.euler += 1;
    out.signature -= 1;
    out.minimal = Some(false);
    out.minimal_note = Some("contains an exceptional sphere".into());
    out.exceptional_count += 1;
    let label = format!("E{}", out.exceptional_count);
    let mut exceptional = TrackedSurface::new(&label, 0, -1, Some(-1));
    if let Some((name, mult)) = through {
        let s = out.surface_mut(name)?;
        let m = i64::from(mult);
        let drop = mult * mult.saturating_sub(1) / 2;
        if drop > s.genus {
            return Err(GeoError::NegativeGenus(
                s.square + s.k_pairing.unwrap_or_default(),
            ));
        }
        s.genus -= drop;
        s.square -= m * m;
        s.k_pairing = s.k_pairing.map(|k| k + m);
        s.add_meeting(&label, mult);
        exceptional.add_meeting(name, mult);
    }
    out.surfaces.push(exceptional);
    out.diagonal_form = out.diagonal_form.map(|(p, n)| (p, n + 1));
    out.set_parity(Parity::Odd, &format!("exceptional sphere {label} has square -1"));
    out.provenance.push(match through {
        Some((name, m)) => format!("blow_up through {name} (multiplicity {m})"),
        None => "blow_up".into(),
    });
    Ok(out)
}

/// `Σ_g × Σ_h` with the fiber classes `Sigma{g}xpt` and `ptxSigma{h}`.
pub fn product_block(g: u32, h: u32) -> Block {
    let (gi, hi) = (i64::from(g), i64::from(h));
    let mut b = Block::new(&format!("Sigma{g}xSigma{h}"), (2 - 2 * gi) * (2 - 2 * hi), 0);
    b.b1 = Some(2 * (g + h) as usize);
    b.symplectic = true;
    b.almost_complex = true;
    b.set_parity(Parity::Even, "product of surfaces is spin");
    let first = format!("Sigma{g}xpt");
    let second = format!("ptxSigma{h}");
    let mut s1 = TrackedSurface::new(&first, g, 0, Some(2 * gi - 2));
    let mut s2 = TrackedSurface::new(&second, h, 0, Some(2 * hi - 2));
    s1.fiber = true;
    s2.fiber = true;
    s1.add_meeting(&second, 1);
    s2.add_meeting(&first, 1);
    b.surfaces = vec![s1, s2];
    b.presentation = Some(product_presentation(g, h));
    b.provenance.push(format!("product Sigma{g} x Sigma{h}"));
    b
}

/// Genus forced by adjunction, `1 + (S·S + K·S)/2`.
pub fn adjunction_genus(square: i64, k_pairing: i64) -> Result<u32, GeoError> {
    let sum = square + k_pairing;
    if sum % 2 != 0 {
        return Err(GeoError::NonIntegralGenus(sum));
    }
    if sum < -2 {
        return Err(GeoError::NegativeGenus(sum));
    }
    Ok((1 + sum / 2) as u32)
}

/// Joins two surfaces that each meet the gluing surface transversely once.
pub fn sew_surfaces(
    s1: &TrackedSurface,
    s2: &TrackedSurface,
    intersections: u32,
) -> Result<TrackedSurface, GeoError> {
    if intersections != 1 {
        return Err(GeoError::UnsupportedIntersectionPattern(intersections));
    }
    let mut out = TrackedSurface::new(
        &s1.label,
        s1.genus + s2.genus,
        s1.square + s2.square,
        s1.k_pairing.zip(s2.k_pairing).map(|(a, b)| a + b + 2),
    );
    out.symplectic = s1.symplectic && s2.symplectic;
    out.meets = s1.meets.clone();
    for (l, c) in &s2.meets {
        out.add_meeting(l, *c);
    }
    Ok(out)
}

/// How the two complements are glued in a fiber sum.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GluingSpec {
    /// `(word in A, word in B)` pairs identified across the gluing, used
    /// when both sides carry presentations.
    pub identify: Vec<(Word, Word)>,
    /// Generators of A whose images land in B, used when B carries no
    /// presentation but has `b1 = 0`.
    pub rationally_trivial: Vec<String>,
    /// Meridian of the summed surface in A; a relator equal to it (or its
    /// inverse) is dropped from A's presentation before gluing.
    pub meridian_a: Option<Word>,
    /// Meridian in B. `None` means it bounds in B's complement.
    pub meridian_b: Option<Word>,
    /// `(surface of A, surface of B)` pairs to sew across the gluing.
    pub sew: Vec<(String, String)>,
}

fn namespace(name: &str, fallback: &str) -> String {
    let ns: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    if ns.starts_with(|c: char| c.is_ascii_alphabetic()) {
        ns
    } else {
        format!("{fallback}{ns}")
    }
}

fn glued_presentation(
    a: &Block,
    b: &Block,
    gluing: &GluingSpec,
) -> Result<Option<crate::presentation::Presentation>, GeoError> {
    let Some(pa) = &a.presentation else {
        return Ok(None);
    };
    let mut pa = pa.clone();
    if let Some(mu) = &gluing.meridian_a {
        pa.remove_relator(mu);
    }
    let mu_a = gluing.meridian_a.clone().unwrap_or_default();
    let out = match &b.presentation {
        Some(pb) => {
            let ns_a = namespace(&a.name, "A");
            let mut ns_b = namespace(&b.name, "B");
            if ns_a == ns_b {
                ns_b.push_str("_2");
            }
            let fp = pa.free_product_ns(pb, &ns_a, &ns_b);
            let rename_a = |w: &Word| w.rename(|g| fp.left.get(g).cloned().unwrap_or_else(|| g.into()));
            let rename_b = |w: &Word| w.rename(|g| fp.right.get(g).cloned().unwrap_or_else(|| g.into()));
            let pairs: Vec<(Word, Word)> = gluing
                .identify
                .iter()
                .map(|(x, y)| (rename_a(x), rename_b(y)))
                .collect();
            let mu_b = gluing.meridian_b.as_ref().map(rename_b).unwrap_or_default();
            fp.presentation
                .identify_generators(&pairs)?
                .add_relators([rename_a(&mu_a).concat(&mu_b)])?
        }
        None => {
            if b.b1 != Some(0) {
                return Ok(None);
            }
            let mu_b = match &gluing.meridian_b {
                Some(_) => return Ok(None),
                None => Word::empty(),
            };
            pa.add_relators([mu_a.concat(&mu_b)])?
                .attach_rationally_trivial_side(&gluing.rationally_trivial)?
        }
    };
    Ok(Some(out))
}

/// Normal connected sum of `a` and `b` along `sa` and `sb`.
pub fn fiber_sum(a: &Block, sa: &str, b: &Block, sb: &str, gluing: &GluingSpec) -> Result<Block, GeoError> {
    let surf_a = a.surface(sa)?.clone();
    let surf_b = b.surface(sb)?.clone();
    if surf_a.genus != surf_b.genus {
        return Err(GeoError::GenusMismatch(surf_a.genus, surf_b.genus));
    }
    if surf_a.square + surf_b.square != 0 {
        return Err(GeoError::SquareMismatch(surf_a.square, surf_b.square));
    }
    let g = i64::from(surf_a.genus);

    let mut out = Block::new(
        &format!("{}#{}", a.name, b.name),
        a.euler + b.euler - 2 * (2 - 2 * g),
        a.signature + b.signature,
    );
    out.symplectic = a.symplectic && b.symplectic && surf_a.symplectic && surf_b.symplectic;
    out.almost_complex = a.almost_complex && b.almost_complex;
    out.exceptional_count = a.exceptional_count;

    let mut side_a: Vec<TrackedSurface> = a
        .surfaces
        .iter()
        .filter(|s| s.label != sa || s.fiber)
        .cloned()
        .collect();
    let mut side_b: Vec<TrackedSurface> = b
        .surfaces
        .iter()
        .filter(|s| s.label != sb || s.fiber)
        .cloned()
        .collect();

    let mut sewn = Vec::new();
    for (la, lb) in &gluing.sew {
        let ia = side_a
            .iter()
            .position(|s| &s.label == la)
            .ok_or_else(|| GeoError::UnknownSurface {
                block: a.name.clone(),
                label: la.clone(),
            })?;
        let ib = side_b
            .iter()
            .position(|s| &s.label == lb)
            .ok_or_else(|| GeoError::UnknownSurface {
                block: b.name.clone(),
                label: lb.clone(),
            })?;
        let (na, nb) = (side_a[ia].meets_count(sa), side_b[ib].meets_count(sb));
        if na != nb {
            return Err(GeoError::UnsupportedIntersectionPattern(na.max(nb)));
        }
        let mut tb = side_b.remove(ib);
        tb.meets.retain(|(l, _)| l != sb);
        side_a[ia] = sew_surfaces(&side_a[ia], &tb, na)?;
        sewn.push(la.clone());
    }

    // Unsewn surfaces crossing a removed surface are punctured.
    let mut punctured = Vec::new();
    side_a.retain(|s| {
        let keep = s.label == sa || sewn.contains(&s.label) || s.meets_count(sa) == 0;
        if !keep {
            punctured.push(s.label.clone());
        }
        keep
    });
    side_b.retain(|s| {
        let keep = (s.label == sb && s.fiber) || s.meets_count(sb) == 0;
        if !keep {
            punctured.push(format!("{}.{}", b.name, s.label));
        }
        keep
    });
    if !surf_a.fiber {
        for s in side_a.iter_mut() {
            s.meets.retain(|(l, _)| l != sa);
        }
    }
    for mut s in side_b {
        if side_a.iter().any(|t| t.label == s.label) {
            s.label = format!("{}.{}", b.name, s.label);
        }
        side_a.push(s);
    }
    out.surfaces = side_a;

    out.presentation = glued_presentation(a, b, gluing)?;
    out.b1 = out.presentation.as_ref().map(|p| p.b1());
    out.refresh_parity();
    out.provenance = a.provenance.clone();
    out.provenance
        .push(format!("fiber_sum {}:{} with {}:{}", a.name, sa, b.name, sb));
    if !punctured.is_empty() {
        out.provenance.push(format!("punctured {}", punctured.join(",")));
    }
    Ok(out)
}

/// Torus surgery: `(e, σ)` fixed, one relator added, symplectic only for
/// Luttinger slopes.
pub fn torus_surgery(block: &Block, datum: &SurgeryDatum) -> Result<Block, GeoError> {
    let p = block
        .presentation
        .as_ref()
        .ok_or_else(|| GeoError::MissingPresentation(block.name.clone()))?;
    let mut out = block.clone();
    let p = p.apply_surgery(datum)?;
    out.b1 = Some(p.b1());
    out.presentation = Some(p);
    out.symplectic &= datum.coefficient.is_luttinger();
    out.provenance.push(format!(
        "surgery ({}, {}, {})",
        datum.label, datum.push_off, datum.coefficient
    ));
    Ok(out)
}

fn connected_sum_name(count: i64, name: &str) -> Option<String> {
    match count {
        0 => None,
        1 => Some(name.to_string()),
        n => Some(format!("{n}{name}")),
    }
}

/// Betti numbers and a rational-homology model, assuming a closed
/// connected oriented manifold.
pub fn homology_profile(block: &Block) -> Result<Profile, GeoError> {
    let b1 = block.b1.ok_or_else(|| GeoError::UnknownB1(block.name.clone()))?;
    let b2 = block.euler - 2 + 2 * b1 as i64;
    let sigma = block.signature;
    if b2 < sigma.abs() || (b2 + sigma) % 2 != 0 {
        return Err(GeoError::HalfIntegerB2 { b2, signature: sigma });
    }
    let (plus, minus) = ((b2 + sigma) / 2, (b2 - sigma) / 2);
    let model = match block.parity {
        Parity::Odd => {
            let parts: Vec<String> = [connected_sum_name(plus, "CP²"), connected_sum_name(minus, "CP̄²")]
                .into_iter()
                .flatten()
                .collect();
            if parts.is_empty() {
                "S⁴".to_string()
            } else {
                parts.join("#")
            }
        }
        Parity::Even if sigma == 0 => match plus {
            0 => "S⁴".to_string(),
            1 => "S²×S²".to_string(),
            k => format!("{k}(S²×S²)"),
        },
        _ => format!("b2+={plus}, b2-={minus}, parity {}", block.parity),
    };
    Ok(Profile {
        b1,
        b2,
        b2_plus: plus,
        b2_minus: minus,
        model,
        char_numbers: CharNumbers::from_invariants(block.euler, block.signature),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geography::{mumford_blown_up, mumford_m};
    use crate::presentation::{y1_complement, SurgeryCoefficient};

    #[test]
    fn blow_up_of_empty_invariants() {
        let b = blow_up(&Block::new("X", 0, 0), None).unwrap();
        assert_eq!((b.euler, b.signature), (1, -1));
        assert_eq!(b.parity, Parity::Odd);
        assert_eq!(b.surface("E1").unwrap().square, -1);
    }

    #[test]
    fn blow_up_through_surface() {
        let b = blow_up(&mumford_m(), Some(("H", 1))).unwrap();
        let h = b.surface("H").unwrap();
        assert_eq!((h.genus, h.square), (3, 0));
        assert!(h.adjunction_consistent());
        assert_eq!(b.surface("E1").unwrap().meets_count("H"), 1);
        let twice = blow_up(
            &Block::new("X", 0, 0)
                .with_surface(TrackedSurface::new("S", 1, 5, Some(-5)))
                .unwrap(),
            Some(("S", 2)),
        )
        .unwrap();
        let s = twice.surface("S").unwrap();
        assert_eq!((s.genus, s.square, s.k_pairing), (0, 1, Some(-3)));
        assert!(s.adjunction_consistent());
        assert!(blow_up(&mumford_m(), Some(("nope", 1))).is_err());
    }

    #[test]
    fn products() {
        assert_eq!(product_block(2, 0).euler, -4);
        let b = product_block(3, 1);
        assert_eq!((b.euler, b.signature), (0, 0));
        let b = product_block(1, 1);
        assert_eq!((b.euler, b.b1), (0, Some(4)));
        assert_eq!(b.presentation.unwrap().b1(), 4);
        assert!(product_block(3, 2).validate().is_ok());
    }

    #[test]
    fn adjunction() {
        assert_eq!(adjunction_genus(1, 3), Ok(3));
        assert_eq!(adjunction_genus(0, -2), Ok(0));
        assert_eq!(adjunction_genus(0, 4), Ok(3));
        assert_eq!(adjunction_genus(1, 0), Err(GeoError::NonIntegralGenus(1)));
        assert_eq!(adjunction_genus(-3, -1), Err(GeoError::NegativeGenus(-4)));
    }

    #[test]
    fn sewing() {
        let sphere = TrackedSurface::new("E", 0, -1, Some(-1));
        let torus = TrackedSurface::new("T", 1, 0, Some(0));
        let t = sew_surfaces(&torus, &sphere, 1).unwrap();
        assert_eq!((t.genus, t.square), (1, -1));
        assert!(t.adjunction_consistent());
        let n = sew_surfaces(&torus, &TrackedSurface::new("S", 0, -4, Some(2)), 1).unwrap();
        assert_eq!((n.genus, n.square), (1, -4));
        let g2 = sew_surfaces(&torus, &torus, 1).unwrap();
        assert_eq!((g2.genus, g2.square), (2, 0));
        assert_eq!(
            sew_surfaces(&torus, &sphere, 2),
            Err(GeoError::UnsupportedIntersectionPattern(2))
        );
    }

    #[test]
    fn fiber_sum_euler() {
        let mb = mumford_blown_up();
        let g = GluingSpec::default();
        let x = fiber_sum(&product_block(3, 1), "Sigma3xpt", &mb, "H", &g).unwrap();
        assert_eq!((x.euler, x.signature), (12, 0));
        let mut spin_side = product_block(2, 0);
        spin_side = spin_side
            .with_surface(TrackedSurface::new("S3", 3, 0, Some(4)))
            .unwrap();
        let x = fiber_sum(&spin_side, "S3", &mb, "H", &g).unwrap();
        assert_eq!((x.euler, x.signature), (8, 0));
        let a = product_block(3, 1);
        let x = fiber_sum(&a, "Sigma3xpt", &a, "Sigma3xpt", &g).unwrap();
        assert_eq!((x.euler, x.signature), (8, 0));
    }

    #[test]
    fn fiber_sum_is_symmetric_in_invariants() {
        let mb = mumford_blown_up();
        let a = product_block(3, 1);
        let g = GluingSpec::default();
        let x = fiber_sum(&a, "Sigma3xpt", &mb, "H", &g).unwrap();
        let y = fiber_sum(&mb, "H", &a, "Sigma3xpt", &g).unwrap();
        assert_eq!(
            (x.euler, x.signature, x.symplectic),
            (y.euler, y.signature, y.symplectic)
        );
    }

    #[test]
    fn fiber_sum_checks() {
        let mb = mumford_blown_up();
        let g = GluingSpec::default();
        assert_eq!(
            fiber_sum(&product_block(2, 1), "Sigma2xpt", &mb, "H", &g).unwrap_err(),
            GeoError::GenusMismatch(2, 3)
        );
        assert!(matches!(
            fiber_sum(&product_block(3, 1), "Sigma3xpt", &mumford_m(), "H", &g),
            Err(GeoError::SquareMismatch(0, 1))
        ));
    }

    #[test]
    fn sewn_torus_makes_form_odd() {
        let g = GluingSpec {
            sew: vec![("ptxSigma1".into(), "E1".into())],
            ..Default::default()
        };
        let x = fiber_sum(&product_block(3, 1), "Sigma3xpt", &mumford_blown_up(), "H", &g).unwrap();
        let t = x.surface("ptxSigma1").unwrap();
        assert_eq!((t.genus, t.square), (1, -1));
        assert_eq!(x.parity, Parity::Odd);
        assert!(x.surface("E1").is_err());
    }

    #[test]
    fn glued_presentation_against_acyclic_side() {
        let mut a = product_block(3, 1);
        a.presentation = Some(y1_complement());
        let g = GluingSpec {
            rationally_trivial: ["a1", "b1", "a2", "b2", "a3", "b3"].map(String::from).to_vec(),
            meridian_a: Some("[c,d]".parse().unwrap()),
            ..Default::default()
        };
        let x = fiber_sum(&a, "Sigma3xpt", &mumford_blown_up(), "H", &g).unwrap();
        let p = x.presentation.as_ref().unwrap();
        assert!(p.has_rational_assumptions());
        assert_eq!(x.b1, Some(2));
    }

    #[test]
    fn unsewn_crossing_surfaces_are_punctured() {
        let x = fiber_sum(
            &product_block(3, 1),
            "Sigma3xpt",
            &mumford_blown_up(),
            "H",
            &GluingSpec::default(),
        )
        .unwrap();
        assert!(x.surface("E1").is_err());
        assert!(x.surface("ptxSigma1").is_err());
        assert!(x.surface("Sigma3xpt").is_ok());
        assert_eq!(x.parity, Parity::Unknown);
    }

    #[test]
    fn chain_sum_accumulates_sewn_square() {
        let g = GluingSpec {
            sew: vec![("ptxSigma1".into(), "E1".into())],
            ..Default::default()
        };
        let mb = mumford_blown_up();
        let mut x = product_block(3, 1);
        for n in 1..=3 {
            x = fiber_sum(&x, "Sigma3xpt", &mb, "H", &g).unwrap();
            assert_eq!(x.euler, 12 * n);
            assert_eq!(x.surface("ptxSigma1").unwrap().square, -n);
        }
        assert_eq!(x.parity, Parity::Odd);
    }

    #[test]
    fn gluing_two_presented_sides() {
        let a = product_block(1, 1);
        let b = product_block(1, 1);
        let g = GluingSpec {
            identify: vec![
                ("a1".parse().unwrap(), "a1".parse().unwrap()),
                ("b1".parse().unwrap(), "b1".parse().unwrap()),
            ],
            meridian_a: Some("[c,d]".parse().unwrap()),
            meridian_b: Some("[c,d]^-1".parse().unwrap()),
            ..Default::default()
        };
        let x = fiber_sum(&a, "Sigma1xpt", &b, "Sigma1xpt", &g).unwrap();
        let p = x.presentation.as_ref().unwrap();
        assert_eq!(p.generators().len(), 8);
        assert_eq!(x.b1, Some(6));
    }

    #[test]
    fn surgery_keeps_euler_and_signature() {
        let b = product_block(3, 1);
        let d = SurgeryDatum::new(
            "T",
            "[b1^-1,d^-1]".parse().unwrap(),
            "a1".parse().unwrap(),
            SurgeryCoefficient::luttinger(-1),
        );
        let s = torus_surgery(&b, &d).unwrap();
        assert_eq!((s.euler, s.signature), (b.euler, b.signature));
        assert_eq!(s.b1, Some(7));
        assert!(s.symplectic);
        let d2 = SurgeryDatum {
            coefficient: "+2".parse().unwrap(),
            ..d
        };
        assert!(!torus_surgery(&b, &d2).unwrap().symplectic);
        assert!(matches!(
            torus_surgery(&mumford_m(), &d2),
            Err(GeoError::MissingPresentation(_))
        ));
    }

    #[test]
    fn profiles() {
        let mut b = Block::new("X", 12, 0);
        b.b1 = Some(0);
        b.set_parity(Parity::Odd, "test");
        assert_eq!(homology_profile(&b).unwrap().model, "5CP²#5CP̄²");
        let mut b = Block::new("X", 8, 0);
        b.b1 = Some(0);
        b.set_parity(Parity::Even, "test");
        assert_eq!(homology_profile(&b).unwrap().model, "3(S²×S²)");
        let p = homology_profile(&mumford_m()).unwrap();
        assert_eq!((p.b2, p.b2_plus, p.char_numbers.c1sq), (1, 1, 9));
        assert_eq!(p.model, "CP²");
        assert!(p.char_numbers.on_bmy_line);
        let mut bad = Block::new("X", 3, 0);
        bad.b1 = Some(0);
        assert!(matches!(
            homology_profile(&bad),
            Err(GeoError::HalfIntegerB2 { .. })
        ));
        assert!(matches!(
            homology_profile(&Block::new("X", 3, 1)),
            Err(GeoError::UnknownB1(_))
        ));
    }

    #[test]
    fn blow_up_adds_one_negative_class() {
        let m = mumford_m();
        let before = homology_profile(&m).unwrap();
        let after = homology_profile(&blow_up(&m, None).unwrap()).unwrap();
        assert_eq!(after.b2_minus, before.b2_minus + 1);
        assert_eq!(after.b2_plus, before.b2_plus);
    }
}
