use super::{Recipe, RecipeError};

const YN: &str = r#"recipe Yn
param n = 2
param m = 1
step product name=Y g=2 h=n
step complement target=Y family=Yn n=n
step surgeries target=Y family=Yn n=n m=m
expect Y.euler = 4*n-4 cite "§2.1"
expect Y.signature = 0 cite "§2.1"
expect Y.h1 = 0 cite "§2.1"
"#;

const ZN: &str = r#"recipe Zn
note "relations transcribed by analogy with Yn; no explicit relation list exists for this family"
param n = 2
param m = 1
step product name=Z g=3 h=n
step complement target=Z family=Zn n=n
step surgeries target=Z family=Zn n=n m=m
expect Z.euler = 8*n-8 cite "§2.1"
expect Z.signature = 0 cite "§2.1"
"#;

const Y1PQ: &str = r#"recipe Y1pq
param p = 1
param q = 1
param m = 1
step product name=Y g=3 h=1
step complement target=Y family=Y1
step surgery target=Y torus="a1'xc'" meridian="[b1^-1,d^-1]" push_off=a1 sign=-1
step surgery target=Y torus="b1'xc''" meridian="[a1^-1,d]" push_off=b1 sign=-1
step surgery target=Y torus="a2'xc'" meridian="[b2^-1,d^-1]" push_off=a2 sign=-1
step surgery target=Y torus="b2'xc''" meridian="[a2^-1,d]" push_off=b2 sign=-1
step surgery target=Y torus="a3'xc'" meridian="[b3^-1,d^-1]" push_off=c sign=1 num=1 den=p
step surgery target=Y torus="a3''xd'" meridian="[c^-1,b3]" push_off=d sign=1 num=m den=q
expect Y.euler = 0 cite "§4"
expect Y.signature = 0 cite "§4"
expect Y.h1_rank = 2 cite "§4"
expect Y.torsion_contains = p cite "§4"
expect Y.torsion_contains = q cite "§4"
"#;

const X1: &str = r#"recipe X1
param m = 1
param p = 1
param q = 1
step product name=Y g=3 h=1
step complement target=Y family=Y1
step surgeries target=Y family=Y1 p=p q=q m=m
step builtin name=MB block=mumford_blown_up
step fiber_sum a=Y sa=Sigma3xpt b=MB sb=H into=X meridian_a="[c,d]" rational="a1 b1 a2 b2 a3 b3" sew="ptxSigma1:E1"
step annotate target=X text="symplectically minimal for m = 1 by Usher's criterion (not computed)" cite="§4"
step annotate target=X text="infinitely many pairwise non-diffeomorphic members, distinguished by Seiberg-Witten invariants (not computed)" cite="§4"
step annotate target=X text="non-symplectic for large m by Taubes' theorem (not computed)" cite="§4"
expect X.euler = 12 cite "§4"
expect X.signature = 0 cite "§4"
expect X.b1 = 0 cite "§4"
expect X.model = "5CP²#5CP̄²" cite "§4"
expect X.parity = odd cite "§4"
expect X.torsion_contains = p cite "§4"
"#;

const XN: &str = r#"recipe Xn
param n = 2
param m = 1
param p = 1
param q = 1
step product name=Y g=3 h=1
step complement target=Y family=Y1
step surgeries target=Y family=Y1 p=p q=q m=m
step builtin name=MB block=mumford_blown_up
step fiber_sum a=Y sa=Sigma3xpt b=MB sb=H into=X count=n meridian_a="[c,d]" rational="a1 b1 a2 b2 a3 b3" sew="ptxSigma1:E1"
step stated key="X.euler" value="4*n+8" label=stated cite="§5"
step stated key="X.euler" value="12*n" label=pairwise_formula cite="§5"
step stated key="X.euler" value="4*n" label=target_model cite="§5"
step annotate target=X text="pairwise fiber-sum formula: e = 0 + 4n - n*(2*(2-2*3)) = 12n" cite="§5"
step annotate target=X text="odd intersection form claimed for odd n via a sewn -n torus" cite="§5"
expect X.signature = 0 cite "§5"
expect X.b1 = 0 cite "§5"
expect X.euler = 12*n cite "§5"
expect X.ptxSigma1.square = 0-n cite "§5"
"#;

const SPIN_X: &str = r#"recipe spinX
step product name=P g=2 h=0
step adjunction name=genus_2S2 square=0 k=4
step surface target=P label=S3 genus=3 square=0 k=4
step builtin name=MB block=mumford_blown_up
step fiber_sum a=P sa=S3 b=MB sb=H into=X rational="a1 b1 a2 b2"
step parity target=X value=even note="spin by the canonical class formula for fiber sums; asserted, not computed" cite="§6"
expect value.genus_2S2 = 3 cite "§2.1"
expect X.euler = 8 cite "§6"
expect X.signature = 0 cite "§6"
expect X.b1 = 0 cite "§6"
expect X.model = "3(S²×S²)" cite "§6"
expect X.parity = even cite "§6"
"#;

const CS_VERIFY: &str = r#"recipe cs-verify
step cs_verify
step stated key="cs.abelianization" value="Z^2" label=stated cite="§3.2"
expect cs.generators_preserve_form = true cite "§3.2"
expect cs.relations_verified = 3 cite "§3.2"
"#;

const MUMFORD_CHECK: &str = r#"recipe mumford-check
param n = 2
step builtin name=M block=mumford
step adjunction name=genus_H square=1 k=3
step builtin name=MB block=mumford_blown_up
step builtin name=C1 block=cs n=1
step builtin name=Cn block=cs n=n
step result target=M
expect M.euler = 3 cite "§3.1"
expect M.signature = 1 cite "§3.1"
expect M.b1 = 0 cite "§3.1"
expect M.chi_h = "1" cite "§3.1"
expect M.c1sq = 9 cite "§3.1"
expect M.bmy = true cite "§3.1"
expect M.model = "CP²" cite "§3.1"
expect value.genus_H = 3 cite "§3.1"
expect MB.H.genus = 3 cite "§3.1"
expect MB.H.square = 0 cite "§3.1"
expect MB.euler = 4 cite "§4"
expect MB.signature = 0 cite "§4"
expect C1.euler = 3 cite "§3.2"
expect C1.b2 = 5 cite "§3.2"
expect C1.b2_plus = 3 cite "§3.2"
expect C1.b2_minus = 2 cite "§3.2"
expect C1.bmy = true cite "§3.2"
expect Cn.euler = 3*n cite "§3.2"
expect Cn.c1sq = 9*n cite "§3.2"
expect Cn.bmy = true cite "§3.2"
"#;

const REGISTRY: [(&str, &str); 8] = [
    ("Yn", YN),
    ("Zn", ZN),
    ("Y1pq", Y1PQ),
    ("X1", X1),
    ("Xn", XN),
    ("spinX", SPIN_X),
    ("cs-verify", CS_VERIFY),
    ("mumford-check", MUMFORD_CHECK),
];

pub fn builtin_recipe_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(n, _)| *n).collect()
}

pub fn builtin_recipe(name: &str) -> Result<Recipe, RecipeError> {
    let (_, text) = REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| RecipeError::UnknownRecipe(name.to_string()))?;
    Ok(Recipe::parse(text).expect("built-in recipes parse"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recipe::run_recipe;

    fn run(name: &str, params: &[(&str, i64)]) -> crate::recipe::Report {
        let overrides: Vec<(String, i64)> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let r = builtin_recipe(name).unwrap().with_params(&overrides).unwrap();
        run_recipe(&r).unwrap()
    }

    #[test]
    fn registry_contents() {
        let names = builtin_recipe_names();
        for n in [
            "Yn",
            "Zn",
            "Y1pq",
            "X1",
            "Xn",
            "spinX",
            "cs-verify",
            "mumford-check",
        ] {
            assert!(names.contains(&n));
        }
        assert!(builtin_recipe("nope").is_err());
    }

    #[test]
    fn builtins_round_trip() {
        for name in builtin_recipe_names() {
            let r = builtin_recipe(name).unwrap();
            assert_eq!(Recipe::parse(&r.to_string()).unwrap(), r, "{name}");
        }
    }

    #[test]
    fn every_expectation_is_cited() {
        for name in builtin_recipe_names() {
            for e in builtin_recipe(name).unwrap().expects {
                assert!(e.cite.starts_with('§'), "{name}: {}", e.key);
            }
        }
    }

    #[test]
    fn yn_runs() {
        let rep = run("Yn", &[("n", 4)]);
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.h1.unwrap().group, "0");
        assert_eq!(rep.result.unwrap().euler, 12);
    }

    #[test]
    fn x1_runs() {
        let rep = run("X1", &[("p", 7)]);
        assert!(rep.passed(), "{rep}");
        let h1 = rep.h1.unwrap();
        assert!(h1.lower_bound);
        assert_eq!(h1.group, "Z/7");
    }

    #[test]
    fn spin_x_runs() {
        let rep = run("spinX", &[]);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn mumford_check_runs() {
        let rep = run("mumford-check", &[("n", 5)]);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn xn_flags_but_passes() {
        let rep = run("Xn", &[("n", 2)]);
        assert!(rep.passed(), "{rep}");
        let d = &rep.discrepancies[0];
        assert!(d.flagged);
        assert_eq!(d.computed, "24");
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run("X1", &[("p", 3)]);
        let b = run("X1", &[("p", 3)]);
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(a.to_json(), b.to_json());
    }
}
