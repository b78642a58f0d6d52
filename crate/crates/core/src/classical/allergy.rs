//! Allergy tests on patients born in three places, examined in three
//! cities, where the tap water changes on alternate days.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Birthplace {
    A,
    B,
    C,
}

impl Birthplace {
    fn idx(self) -> usize {
        self as usize
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Birthplace::A),
            "b" | "B" => Ok(Birthplace::B),
            "c" | "C" => Ok(Birthplace::C),
            other => Err(Error::InvalidArgument(format!("unknown birthplace {other:?}"))),
        }
    }
}

/// Order in which examination days are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DaySchedule {
    /// Days `1, 2, ..., N`.
    Alternating,
    /// `N` day indices drawn uniformly from `0..2^32`.
    Random { seed: u64 },
}

impl DaySchedule {
    pub fn days(&self, n: usize) -> Vec<u64> {
        match *self {
            DaySchedule::Alternating => (1..=n as u64).collect(),
            DaySchedule::Random { seed } => {
                let mut rng = crate::rng::shard_rng(seed, 0);
                (0..n).map(|_| rng.random::<u32>() as u64).collect()
            }
        }
    }
}

/// Outcome `A_o^l(parity)` for birthplace `o`, city `l` and day parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllergyScenario {
    /// `[birthplace][city - 1][0 = even, 1 = odd]`.
    table: [[[i8; 2]; 3]; 3],
}

impl AllergyScenario {
    /// The published outcomes.
    pub fn table_one() -> Self {
        // even: a (+,+,+), b (+,-,+), c (-,-,-); odd: the negatives.
        let even = [[1, 1, 1], [1, -1, 1], [-1, -1, -1]];
        let mut table = [[[0i8; 2]; 3]; 3];
        for o in 0..3 {
            for l in 0..3 {
                table[o][l] = [even[o][l], -even[o][l]];
            }
        }
        AllergyScenario { table }
    }

    pub fn from_fn(f: impl Fn(Birthplace, usize, bool) -> i8) -> Result<Self> {
        let mut table = [[[0i8; 2]; 3]; 3];
        for (o, b) in [Birthplace::A, Birthplace::B, Birthplace::C].into_iter().enumerate() {
            for l in 0..3 {
                for (p, odd) in [false, true].into_iter().enumerate() {
                    let v = f(b, l + 1, odd);
                    if v != 1 && v != -1 {
                        return Err(Error::InvalidArgument(format!("outcome {v} is not ±1")));
                    }
                    table[o][l][p] = v;
                }
            }
        }
        Ok(AllergyScenario { table })
    }

    pub fn outcome(&self, o: Birthplace, city: usize, day: u64) -> Result<i8> {
        if !(1..=3).contains(&city) {
            return Err(Error::InvalidArgument(format!("city {city} not in 1..=3")));
        }
        Ok(self.table[o.idx()][city - 1][(day % 2) as usize])
    }

    fn at(&self, o: Birthplace, city: usize, day: u64) -> i64 {
        self.table[o.idx()][city - 1][(day % 2) as usize] as i64
    }

    fn average(&self, n: usize, schedule: DaySchedule, f: impl Fn(u64) -> i64) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        let total: i64 = schedule.days(n).into_iter().map(f).sum();
        Ok(total as f64 / n as f64)
    }

    /// Average of `A_a¹A_b² + A_a¹A_c³ + A_b²A_c³`: one patient of each
    /// birthplace, each examined in one city, on the same day.
    pub fn gamma_triples(&self, n: usize, schedule: DaySchedule) -> Result<f64> {
        use Birthplace::*;
        self.average(n, schedule, |d| {
            self.at(A, 1, d) * self.at(B, 2, d) + self.at(A, 1, d) * self.at(C, 3, d) + self.at(B, 2, d) * self.at(C, 3, d)
        })
    }

    /// Average of `A_a¹A_b² + A_a¹A_c² + A_b¹A_c²`: pairs of patients,
    /// one examined in Lille (city 1) and one in Lyon (city 2).
    pub fn gamma_pairs(&self, n: usize, schedule: DaySchedule) -> Result<f64> {
        use Birthplace::*;
        self.average(n, schedule, |d| {
            self.at(A, 1, d) * self.at(B, 2, d) + self.at(A, 1, d) * self.at(C, 2, d) + self.at(B, 1, d) * self.at(C, 2, d)
        })
    }

    /// Average single outcome of birthplace `o` in city `l`.
    pub fn single_average(&self, o: Birthplace, city: usize, n: usize, schedule: DaySchedule) -> Result<f64> {
        self.outcome(o, city, 0)?;
        self.average(n, schedule, |d| self.at(o, city, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries() {
        let s = AllergyScenario::table_one();
        assert_eq!(s.outcome(Birthplace::A, 1, 0).unwrap(), 1);
        assert_eq!(s.outcome(Birthplace::C, 3, 1).unwrap(), 1);
        assert_eq!(s.outcome(Birthplace::B, 2, 2).unwrap(), -1);
        assert!(s.outcome(Birthplace::A, 4, 0).is_err());
    }

    #[test]
    fn gammas() {
        let s = AllergyScenario::table_one();
        for n in [1, 2, 7, 100] {
            assert_eq!(s.gamma_triples(n, DaySchedule::Alternating).unwrap(), -1.0);
            assert_eq!(s.gamma_pairs(n, DaySchedule::Alternating).unwrap(), -3.0);
            assert_eq!(s.gamma_pairs(n, DaySchedule::Random { seed: 5 }).unwrap(), -3.0);
        }
        let plus = AllergyScenario::from_fn(|_, _, _| 1).unwrap();
        assert_eq!(plus.gamma_triples(5, DaySchedule::Alternating).unwrap(), 3.0);
        assert_eq!(s.single_average(Birthplace::B, 2, 10, DaySchedule::Alternating).unwrap(), 0.0);
    }

    #[test]
    fn location_independent_tables_respect_the_bound() {
        for bits in 0..64u32 {
            let s = AllergyScenario::from_fn(|o, _, odd| {
                let k = o as u32 * 2 + odd as u32;
                if bits >> k & 1 == 0 { 1 } else { -1 }
            })
            .unwrap();
            assert!(s.gamma_pairs(4, DaySchedule::Alternating).unwrap() >= -1.0);
            assert!(s.gamma_triples(4, DaySchedule::Alternating).unwrap() >= -1.0);
        }
    }
}
