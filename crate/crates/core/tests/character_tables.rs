use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use posaudit_core::character::{
    constructive_characters, dixon_table, fusion_tensor, induce_from_normal, q8_irreducibles, CharacterTable,
    CharacterTableJson, ClassFunction, ClassStructure, FusionTensor,
};
use posaudit_core::construction::Counterexample;
use posaudit_core::group::{q8_group, FiniteGroup};

struct G128 {
    cx: Counterexample,
    ctx: Arc<ClassStructure>,
    table: CharacterTable,
    fusion: FusionTensor,
}

fn g128() -> &'static G128 {
    static CELL: OnceLock<G128> = OnceLock::new();
    CELL.get_or_init(|| {
        let cx = Counterexample::canonical();
        let ctx = ClassStructure::new(cx.group().clone());
        let table = dixon_table(&ctx).expect("dixon table");
        let fusion = fusion_tensor(&table).expect("fusion tensor");
        G128 { cx, ctx, table, fusion }
    })
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn q8_table_matches_constructive_characters() {
    let ctx = ClassStructure::new(q8_group());
    let table = dixon_table(&ctx).unwrap();
    assert_eq!(table.degrees(), &[1, 1, 1, 1, 2]);
    for c in q8_irreducibles(&ctx).unwrap() {
        assert!(table.find_row(&c.character).is_some(), "{} missing", c.name);
    }
    assert_eq!(table.indicators().unwrap(), vec![1, 1, 1, 1, -1]);
}

#[test]
fn cyclic_group_needs_irrational_values() {
    let ctx = ClassStructure::new(FiniteGroup::cyclic(5).unwrap());
    let table = dixon_table(&ctx).unwrap();
    assert_eq!(table.degrees(), &[1; 5]);
    assert!(table.irreducibles().iter().filter(|r| !r.is_real()).count() == 4);
    assert_eq!(table.indicators().unwrap(), vec![1, 0, 0, 0, 0]);
    // Galois conjugation permutes the rows.
    for k in [2, 3, 4] {
        let mut image: Vec<usize> = table
            .irreducibles()
            .iter()
            .map(|r| table.find_row(&r.galois(k)).unwrap())
            .collect();
        image.sort_unstable();
        assert_eq!(image, (0..5).collect::<Vec<_>>());
    }
}

#[test]
fn trivial_and_elementary_abelian_tables() {
    let ctx = ClassStructure::new(FiniteGroup::trivial());
    let table = dixon_table(&ctx).unwrap();
    assert_eq!(table.degrees(), &[1]);

    let ctx = ClassStructure::new(FiniteGroup::elementary_abelian(4));
    let table = dixon_table(&ctx).unwrap();
    assert_eq!(table.len(), 16);
    assert!(table.indicators().unwrap().iter().all(|&n| n == 1));
}

#[test]
fn g128_table_shape() {
    let g = g128();
    assert_eq!(g.table.len(), 23);
    assert_eq!(g.table.degrees().iter().map(|d| d * d).sum::<u64>(), 128);
    assert_eq!(g.table.trivial_index(), 0);
    g.table.check_row_orthogonality().unwrap();
    g.table.check_column_orthogonality().unwrap();
}

#[test]
fn g128_contains_constructive_characters() {
    let g = g128();
    let lambda = g.cx.choose_lambda().unwrap();
    let named = constructive_characters(&g.cx, &g.ctx, &lambda).unwrap();
    assert_eq!(named.len(), 6);
    for c in &named {
        assert!(g.table.find_row(&c.character).is_some(), "{} missing", c.name);
    }
    let chi = &named[0].character;
    assert_eq!(chi.degree(), Some(BigInt::from(8)));
    assert_eq!(chi.fs_indicator().unwrap(), rat(1));
}

#[test]
fn chi_squared_has_a_symplectic_constituent() {
    let g = g128();
    let lambda = g.cx.choose_lambda().unwrap();
    let named = constructive_characters(&g.cx, &g.ctx, &lambda).unwrap();
    let chi = &named[0].character;
    let phi = &named.iter().find(|c| c.name == "lift(phi)").unwrap().character;
    let square = chi.pointwise_product(chi).unwrap();
    let mult = square.rational_inner_product(phi).unwrap();
    assert!(mult >= rat(2), "multiplicity {mult}");
    assert!(mult.is_integer() && (mult.to_integer() % BigInt::from(2)).is_zero());
    assert_eq!(phi.fs_indicator().unwrap(), rat(-1));

    let p = g.table.find_row(chi).unwrap();
    let r = g.table.find_row(phi).unwrap();
    assert_eq!(BigRational::from_integer(g.fusion.get(p, p, r).into()), mult);
}

#[test]
fn involution_count_identity() {
    for group in [
        q8_group(),
        g128().cx.group().clone(),
        FiniteGroup::elementary_abelian(3),
    ] {
        let ctx = ClassStructure::new(group.clone());
        let table = dixon_table(&ctx).unwrap();
        let indicators = table.indicators().unwrap();
        let total: i64 = indicators
            .iter()
            .zip(table.degrees())
            .map(|(&n, &d)| i64::from(n) * d as i64)
            .sum();
        let solutions = group.elements().filter(|&g| group.mul(g, g) == 0).count();
        assert_eq!(total, solutions as i64);
    }
}

#[test]
fn frobenius_reciprocity_over_h() {
    let g = g128();
    let (h_group, embedding) = g.cx.group().restrict(g.cx.h()).unwrap();
    let hctx = ClassStructure::new(h_group);
    let h_table = dixon_table(&hctx).unwrap();
    let n = g.ctx.exponent();
    let mut ambient_to_local = vec![usize::MAX; g.ctx.order()];
    for (i, &a) in embedding.iter().enumerate() {
        ambient_to_local[a] = i;
    }
    for lambda in h_table.irreducibles() {
        let induced = induce_from_normal(&g.ctx, g.cx.h(), |a| {
            lambda.value_at(ambient_to_local[a]).promote(n).unwrap()
        })
        .unwrap();
        for theta in g.table.irreducibles() {
            let lhs = induced.rational_inner_product(theta).unwrap();
            let restricted = theta.restrict(&hctx, &embedding).unwrap();
            let rhs = lambda.rational_inner_product(&restricted).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn fusion_tensor_invariants() {
    let g = g128();
    let k = g.fusion.rank();
    let d = g.table.degrees();
    let one = g.table.trivial_index();
    for p in 0..k {
        for q in 0..k {
            let dim: u64 = (0..k).map(|r| u64::from(g.fusion.get(p, q, r)) * d[r]).sum();
            assert_eq!(dim, d[p] * d[q]);
            for r in 0..k {
                assert_eq!(g.fusion.get(p, q, r), g.fusion.get(q, p, r));
            }
            assert_eq!(g.fusion.get(one, p, q), u32::from(p == q));
        }
        let dual = g.table.dual_index(p);
        assert_eq!(g.fusion.get(p, dual, one), 1);
    }
}

#[test]
fn json_round_trip_preserves_values() {
    let g = g128();
    let json = CharacterTableJson::from_table(&g.table).unwrap();
    let text = serde_json::to_string(&json).unwrap();
    let back: CharacterTableJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back, json);
    assert_eq!(back.schema, 1);
    let values = back.parse_values().unwrap();
    for (row, parsed) in g.table.irreducibles().iter().zip(&values) {
        assert_eq!(row.values(), parsed.as_slice());
    }
}

#[test]
fn regular_character_decomposes_by_degree() {
    let g = g128();
    let reg = ClassFunction::regular(&g.ctx);
    let mults = g.table.decompose(&reg).unwrap();
    for (m, &d) in mults.iter().zip(g.table.degrees()) {
        assert_eq!(*m, rat(d as i64));
    }
    let trivial = ClassFunction::trivial(&g.ctx);
    assert!(trivial.rational_inner_product(&trivial).unwrap().is_one());
}
