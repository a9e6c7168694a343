use anyhow::Result;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use badtri::cf::expand_quadratic;
use badtri::theorem::{
    b22_solutions, check_sum, extra_identity, generate_solutions, insertion, main2_solutions,
    main_solutions, parse_code, predicted_class, scalene_family, search_triples, survivor_contains,
    verify_tables, DigitRule, ExtraIdentity, InsertionKind, Relation, SearchConfig, SolutionTriple,
    TheoremError,
};
use badtri::{QuadRat, Rat};

use crate::{RelationArg, VerifyCmd};

fn report_triple(t: &SolutionTriple, relation: Relation) -> Result<bool> {
    let sum_ok = check_sum(t, relation)?;
    let mut words_ok = true;
    for c in t.components() {
        words_ok &= expand_quadratic(&c.value)? == c.word;
    }
    print!("{t}");
    let ok = sum_ok && words_ok;
    println!(
        "  {relation}: {}, expansions {}",
        if sum_ok { "exact" } else { "FAILED" },
        if words_ok { "match" } else { "DIFFER" }
    );
    Ok(ok)
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let den: i64 = rng.gen_range(1..=1000);
    let num: i64 = rng.gen_range(1..den.max(2));
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Number of `(x, y)` samples on which each identity holds exactly, skipping poles.
fn check_identities(samples: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = true;
    for kind in [InsertionKind::Two, InsertionKind::OneOneTwoOneOne] {
        let (mut ok, mut poles) = (0, 0);
        while ok + poles < samples {
            let (x, y) = (random_rat(&mut rng), random_rat(&mut rng));
            let z = Rat::from_integer(1.into()) - &x - &y;
            let q = |r: &Rat| QuadRat::from_rat(r, 2).expect("rational input");
            match insertion(kind, &q(&x), &q(&y), &q(&z)) {
                Ok(ins) if ins.residual == ins.closed_form => ok += 1,
                Ok(_) => {
                    println!("{kind:?}: mismatch at x={x}, y={y}");
                    all = false;
                    poles += 1;
                }
                Err(TheoremError::Pole) => poles += 1,
                Err(e) => return Err(e.into()),
            }
        }
        println!("{kind:?}: {ok} exact, {poles} skipped");
        all &= ok > 0;
    }
    for id in ExtraIdentity::ALL {
        let (mut ok, mut poles) = (0, 0);
        while ok + poles < samples {
            let (x, y) = (random_rat(&mut rng), random_rat(&mut rng));
            match extra_identity(id, &x, &y) {
                Ok((lhs, rhs)) if lhs == rhs => ok += 1,
                Ok(_) => {
                    println!("{id:?}: mismatch at x={x}, y={y}");
                    all = false;
                    poles += 1;
                }
                Err(TheoremError::Pole) => poles += 1,
                Err(e) => return Err(e.into()),
            }
        }
        println!("{id:?}: {ok} exact, {poles} skipped");
        all &= ok > 0;
    }
    Ok(all)
}

pub fn run(cmd: VerifyCmd) -> Result<bool> {
    match cmd {
        VerifyCmd::Main => {
            let mut ok = true;
            for t in main_solutions() {
                ok &= report_triple(&t, Relation::SumIsOne)?;
            }
            Ok(ok)
        }
        VerifyCmd::Main2 => {
            let mut ok = true;
            for t in main2_solutions()? {
                ok &= report_triple(&t, Relation::XPlusYIsZ)?;
            }
            Ok(ok)
        }
        VerifyCmd::Tables { n_max, json } => {
            let report = verify_tables(n_max);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(report.summary.all_pass)
        }
        VerifyCmd::Identities { samples, seed } => check_identities(samples, seed),
        VerifyCmd::Family { l_max } => {
            let mut ok = true;
            for t in b22_solutions() {
                ok &= report_triple(&t, Relation::SumIsOne)?;
            }
            for ell in 0..=l_max {
                let t = scalene_family(ell)?;
                println!("family member {ell}:");
                ok &= report_triple(&t, Relation::SumIsOne)?;
                ok &= t.x.value != t.y.value && t.y.value != t.z.value && t.x.value != t.z.value;
            }
            Ok(ok)
        }
        VerifyCmd::Generate { code } => {
            let code = parse_code(&code)?;
            let t = generate_solutions(&code)?;
            let ok = report_triple(&t, Relation::SumIsOne)?;
            let predicted = predicted_class(&code);
            println!(
                "  max digit {}, predicted class (B={}, j={})",
                t.max_digit(),
                predicted.bound,
                predicted.index
            );
            Ok(ok && t.max_digit() <= 3 && t.x.class == predicted)
        }
        VerifyCmd::Search {
            depth,
            relation,
            lookahead,
            two_only,
        } => {
            let relation = match relation {
                RelationArg::Sum => Relation::SumIsOne,
                RelationArg::Diff => Relation::XPlusYIsZ,
            };
            let mut cfg = SearchConfig::new(relation, depth);
            cfg.lookahead = lookahead;
            if two_only {
                cfg.rule = DigitRule::AllAtMostTwo;
            }
            let res = search_triples(&cfg);
            let known = match relation {
                Relation::SumIsOne => main_solutions(),
                Relation::XPlusYIsZ => main2_solutions()?,
            };
            println!("{} nodes, {} survivors", res.nodes, res.survivors.len());
            let mut ok = true;
            for s in &res.survivors {
                let hit = known
                    .iter()
                    .position(|t| survivor_contains(s, [&t.x.value, &t.y.value, &t.z.value]));
                let fmt = |w: &Vec<u64>| w.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                println!(
                    "  x:[{}] y:[{}] z:[{}] -> {}",
                    fmt(&s[0]),
                    fmt(&s[1]),
                    fmt(&s[2]),
                    hit.map_or("no known solution".to_string(), |i| format!(
                        "solution {}",
                        i + 1
                    ))
                );
                ok &= hit.is_some();
            }
            if !two_only {
                for (i, t) in known.iter().enumerate() {
                    let covered = res
                        .survivors
                        .iter()
                        .any(|s| survivor_contains(s, [&t.x.value, &t.y.value, &t.z.value]));
                    if !covered {
                        println!("  solution {} not covered", i + 1);
                        ok = false;
                    }
                }
            }
            Ok(ok)
        }
    }
}
