//! Bracket identities and Casimirs checked as exact zeros, and the claim
//! report written by `rotor verify-algebra`.

use num::integer::Integer;
use num::BigRational;
use serde::Serialize;

use crate::algebra::{Observable, ObservableBuilder, RationalComplex};
use crate::model::{rational, ExactParameters, OscillatorVariant, PhaseState};
use crate::superint::rank::{certify_rank, RankMode, DEFAULT_RANK_TOLERANCE};

/// Version of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;

/// Indices of the K-tower checked by the claim suite: 1 ≤ m ≤ 4, 1 ≤ |n| ≤ 4,
/// gcd(m, |n|) = 1.
pub fn k_tower_indices() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in 1..=4i64 {
        for n in (-4..=4i64).filter(|&n| n != 0 && m.gcd(&n) == 1) {
            out.push((m, n));
        }
    }
    out
}

/// The generic state rank is certified at: (1, 1/2, 0, 1/3, 1/5, Iω), which
/// lies on the resonant level set pθ = Iω of K(1,1).
pub fn reference_state(params: &ExactParameters) -> PhaseState<BigRational> {
    PhaseState::new(
        rational(1, 1),
        rational(1, 2),
        rational(0, 1),
        rational(1, 3),
        rational(1, 5),
        &params.inertia * &params.omega,
    )
}

/// The integral set {F1, F2, G1, G2, P(1,1)} (primed generators in the gravity
/// variant), optionally without P or with L appended.
pub fn rank_integrals(builder: &ObservableBuilder, with_p11: bool, with_l: bool) -> Vec<(String, Observable)> {
    let prime = if builder.variant() == OscillatorVariant::Gravity { "'" } else { "" };
    let mut set = vec![
        ("F1".to_string(), builder.f1()),
        ("F2".to_string(), builder.f2()),
        (format!("G1{prime}"), builder.g1_prime()),
        (format!("G2{prime}"), builder.g2_prime()),
    ];
    if with_p11 {
        set.push(("P_1_1".to_string(), builder.p(1, 1).expect("(1, 1) is admissible")));
    }
    if with_l {
        set.push((format!("L{prime}"), builder.angular_momentum_prime()));
    }
    set
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationCheck {
    pub exact_zero: bool,
    pub residual: Observable,
}

/// `lhs − rhs` in canonical form and whether it vanishes identically.
pub fn verify_relation(lhs: &Observable, rhs: &Observable) -> RelationCheck {
    let residual = lhs - rhs;
    RelationCheck { exact_zero: residual.is_zero(), residual }
}

/// The Casimir of the su(2) generators minus its value in terms of F1 − F2:
///
/// * isotropic: `4G1² + G2² + ω²L² − (F1 − F2)²`
/// * gravity:   `4G1'² + G2'² + ω²L'² − (F1 − F2 + Mg²/2ω²)²`
///
/// With g = 0 both forms coincide.
pub fn casimir_residual(params: &ExactParameters, variant: OscillatorVariant) -> Observable {
    let b = ObservableBuilder::new(params.clone(), variant);
    let (lhs, rhs) = casimir_sides(&b, &b.g1_prime(), &b.g2_prime(), &b.angular_momentum_prime());
    &lhs - &rhs
}

fn casimir_sides(b: &ObservableBuilder, g1: &Observable, g2: &Observable, l: &Observable) -> (Observable, Observable) {
    let p = b.params();
    let omega2 = &p.omega * &p.omega;
    let g = b.gravity();
    let offset = &p.mass * &g * &g / (BigRational::from_integer(2.into()) * &omega2);
    let lhs = g1.pow(2).scale_real(&BigRational::from_integer(4.into())) + g2.pow(2) + l.pow(2).scale_real(&omega2);
    let rhs = (b.f1() - b.f2() + Observable::rational(offset)).pow(2);
    (lhs, rhs)
}

/// One identity `lhs = rhs` with a stable identifier.
#[derive(Debug, Clone)]
pub struct Claim {
    pub id: String,
    pub description: String,
    pub lhs: Observable,
    pub rhs: Observable,
}

impl Claim {
    fn new(id: impl Into<String>, description: impl Into<String>, lhs: Observable, rhs: Observable) -> Self {
        Self { id: id.into(), description: description.into(), lhs, rhs }
    }

    pub fn check(&self) -> ClaimResult {
        let RelationCheck { exact_zero, residual } = verify_relation(&self.lhs, &self.rhs);
        let details = if exact_zero {
            "residual is the zero observable".to_string()
        } else {
            let shown: Vec<String> = residual.terms().take(6).map(|(m, c)| format!("{c} * {m}")).collect();
            let more = if residual.len() > shown.len() { " + ..." } else { "" };
            format!("residual: {}{more}", shown.join(" + "))
        };
        ClaimResult {
            claim_id: self.id.clone(),
            description: self.description.clone(),
            status: if exact_zero { Status::Pass } else { Status::Fail },
            residual_term_count: residual.len(),
            details,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ClaimResult {
    pub claim_id: String,
    pub description: String,
    pub status: Status,
    pub residual_term_count: usize,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParameterEcho {
    pub mass: String,
    pub omega: String,
    pub inertia: String,
    pub gravity: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub variant: &'static str,
    pub parameters: ParameterEcho,
    pub claims: Vec<ClaimResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.status == Status::Pass)
    }

    pub fn get(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.claim_id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// The generators the claim list is built from. Fields are public so a
/// caller can substitute a generator and watch the affected claims fail.
#[derive(Debug, Clone)]
pub struct AlgebraSuite {
    pub builder: ObservableBuilder,
    pub f1: Observable,
    pub f2: Observable,
    pub l: Observable,
    pub g1: Observable,
    pub g2: Observable,
    pub l_prime: Observable,
    pub g1_prime: Observable,
    pub g2_prime: Observable,
    /// Z in the isotropic variant, Z' in the gravity variant.
    pub z: Observable,
}

impl AlgebraSuite {
    pub fn new(params: ExactParameters, variant: OscillatorVariant) -> Self {
        let b = ObservableBuilder::new(params, variant);
        Self {
            f1: b.f1(),
            f2: b.f2(),
            l: b.angular_momentum(),
            g1: b.g1(),
            g2: b.g2(),
            l_prime: b.angular_momentum_prime(),
            g1_prime: b.g1_prime(),
            g2_prime: b.g2_prime(),
            z: b.z_prime(),
            builder: b,
        }
    }

    fn su2_claims(&self, prefix: &str, tag: &str, l: &Observable, g1: &Observable, g2: &Observable) -> Vec<Claim> {
        let p = self.builder.params();
        let omega2 = &p.omega * &p.omega;
        let name = |s: &str| if tag.is_empty() { s.to_string() } else { format!("{s}{tag}") };
        let (ln, g1n, g2n) = (name("L"), name("G1"), name("G2"));
        vec![
            Claim::new(
                format!("{prefix}.bracket.{ln}_{g1n}"),
                format!("{{{ln}, {g1n}}} = -{g2n}"),
                l.poisson_bracket(g1),
                -g2,
            ),
            Claim::new(
                format!("{prefix}.bracket.{ln}_{g2n}"),
                format!("{{{ln}, {g2n}}} = 4 {g1n}"),
                l.poisson_bracket(g2),
                g1.scale_real(&BigRational::from_integer(4.into())),
            ),
            Claim::new(
                format!("{prefix}.bracket.{g1n}_{g2n}"),
                format!("{{{g1n}, {g2n}}} = -omega^2 {ln}"),
                g1.poisson_bracket(g2),
                l.scale_real(&-omega2),
            ),
        ]
    }

    fn ladder_claims(&self, label: &str) -> Vec<Claim> {
        let p = self.builder.params();
        let i_omega = RationalComplex::imag(p.omega.clone());
        let zbar = self.z.conjugate();
        let mut claims = vec![
            Claim::new(
                format!("ladder.{label}_F1"),
                format!("{{{label}, F1}} = i omega {label}"),
                self.z.poisson_bracket(&self.f1),
                self.z.scale(&i_omega),
            ),
            Claim::new(
                format!("ladder.{label}bar_F1"),
                format!("{{{label}bar, F1}} = -i omega {label}bar"),
                zbar.poisson_bracket(&self.f1),
                zbar.scale(&-&i_omega),
            ),
        ];
        let inertia = BigRational::from_integer(1.into()) * &p.inertia;
        for (m, n) in k_tower_indices() {
            let k = self.z.pow(m as u32) * Observable::fourier(-(n as i32));
            // I {K, F1} = i (m ω I − n pθ) K
            let rate = (Observable::rational(BigRational::from_integer(m.into()) * &p.omega * &inertia)
                - Observable::ptheta().scale_real(&BigRational::from_integer(n.into())))
            .scale(&RationalComplex::i());
            let kbar = k.conjugate();
            claims.push(Claim::new(
                format!("kbracket.K_{m}_{n}"),
                format!("I {{K_{m}_{n}, F1}} = i (m omega I - n ptheta) K_{m}_{n}"),
                k.poisson_bracket(&self.f1).scale_real(&inertia),
                &rate * &k,
            ));
            claims.push(Claim::new(
                format!("kbracket.Kbar_{m}_{n}"),
                format!("I {{Kbar_{m}_{n}, F1}} = -i (m omega I - n ptheta) Kbar_{m}_{n}"),
                kbar.poisson_bracket(&self.f1).scale_real(&inertia),
                -(&rate * &kbar),
            ));
            let half = RationalComplex::real(BigRational::new(1.into(), 2.into()));
            let p_mn = (&k + &kbar).scale(&half);
            let q_mn = (&k - &kbar).scale(&RationalComplex::imag(BigRational::new((-1).into(), 2.into())));
            claims.push(Claim::new(
                format!("reality.P_{m}_{n}"),
                format!("P_{m}_{n} equals its complex conjugate"),
                p_mn.conjugate(),
                p_mn,
            ));
            claims.push(Claim::new(
                format!("reality.Q_{m}_{n}"),
                format!("Q_{m}_{n} equals its complex conjugate"),
                q_mn.conjugate(),
                q_mn,
            ));
        }
        claims
    }

    /// The full claim list for this variant.
    pub fn claims(&self) -> Vec<Claim> {
        let zero = Observable::zero;
        let p = self.builder.params();
        let mut claims = vec![
            Claim::new("abelian.F1_F2", "{F1, F2} = 0", self.f1.poisson_bracket(&self.f2), zero()),
            Claim::new("abelian.F2_L", "{F2, L} = 0", self.f2.poisson_bracket(&self.l), zero()),
        ];
        claims.extend(self.su2_claims("su2", "", &self.l, &self.g1, &self.g2));
        match self.builder.variant() {
            OscillatorVariant::Isotropic => {
                claims.push(Claim::new("abelian.F1_L", "{F1, L} = 0", self.f1.poisson_bracket(&self.l), zero()));
                claims.push(Claim::new("integral.F1_G1", "{F1, G1} = 0", self.f1.poisson_bracket(&self.g1), zero()));
                claims.push(Claim::new("integral.F1_G2", "{F1, G2} = 0", self.f1.poisson_bracket(&self.g2), zero()));
                let (lhs, rhs) = casimir_sides(&self.builder, &self.g1, &self.g2, &self.l);
                claims.push(Claim::new("casimir.isotropic", "4 G1^2 + G2^2 + omega^2 L^2 = (F1 - F2)^2", lhs, rhs));
                claims.extend(self.ladder_claims("Z"));
            }
            OscillatorVariant::Gravity => {
                let mg = &p.mass * self.builder.gravity();
                claims.push(Claim::new(
                    "gravity.L_not_conserved",
                    "{F1, L} = M g x",
                    self.f1.poisson_bracket(&self.l),
                    Observable::x().scale_real(&mg),
                ));
                for (id, name, obs) in [
                    ("gravity.F1_Lprime", "L'", &self.l_prime),
                    ("gravity.F1_G1prime", "G1'", &self.g1_prime),
                    ("gravity.F1_G2prime", "G2'", &self.g2_prime),
                ] {
                    claims.push(Claim::new(id, format!("{{F1, {name}}} = 0"), self.f1.poisson_bracket(obs), zero()));
                }
                claims.extend(self.su2_claims("su2prime", "prime", &self.l_prime, &self.g1_prime, &self.g2_prime));
                let (lhs, rhs) = casimir_sides(&self.builder, &self.g1_prime, &self.g2_prime, &self.l_prime);
                claims.push(Claim::new(
                    "casimir.gravity",
                    "4 G1'^2 + G2'^2 + omega^2 L'^2 = (F1 - F2 + M g^2 / (2 omega^2))^2",
                    lhs,
                    rhs,
                ));
                claims.extend(self.ladder_claims("Zprime"));
            }
        }
        claims
    }

    /// Exact Jacobian ranks at [`reference_state`]: 5 with P(1,1), 4 without,
    /// 5 with L added.
    pub fn rank_claims(&self) -> Vec<ClaimResult> {
        let state = reference_state(self.builder.params());
        [("rank.with_P11", true, false, 5), ("rank.without_P11", false, false, 4), ("rank.with_L", true, true, 5)]
            .into_iter()
            .map(|(id, with_p, with_l, expected)| {
                let set = rank_integrals(&self.builder, with_p, with_l);
                let names: Vec<&str> = set.iter().map(|(n, _)| n.as_str()).collect();
                let description = format!("rank of d({})/d(q, p) is {expected}", names.join(", "));
                let (status, details) = match certify_rank(&set, &state, RankMode::Exact, DEFAULT_RANK_TOLERANCE) {
                    Ok(r) if r.rank == expected => (Status::Pass, format!("exact rank {} at {:?}", r.rank, r.state)),
                    Ok(r) => (Status::Fail, format!("exact rank {} at {:?}", r.rank, r.state)),
                    Err(e) => (Status::Fail, e.to_string()),
                };
                ClaimResult { claim_id: id.to_string(), description, status, residual_term_count: 0, details }
            })
            .collect()
    }

    pub fn run(&self) -> VerificationReport {
        let p = self.builder.params();
        VerificationReport {
            schema: REPORT_SCHEMA,
            variant: match self.builder.variant() {
                OscillatorVariant::Isotropic => "isotropic",
                OscillatorVariant::Gravity => "gravity",
            },
            parameters: ParameterEcho {
                mass: p.mass.to_string(),
                omega: p.omega.to_string(),
                inertia: p.inertia.to_string(),
                gravity: self.builder.gravity().to_string(),
            },
            claims: self.claims().iter().map(Claim::check).chain(self.rank_claims()).collect(),
        }
    }
}
