use num_traits::{One, Signed};

use crate::arith::ball::Q;
use crate::config::ScheduleSection;
use crate::error::{Error, Result};
use crate::field::presentation::parse_rational;

/// The bound sequence theta(k), k = 1, 2, ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaSchedule {
    Geometric { base: Q },
    User { values: Vec<Q> },
}

impl Default for ThetaSchedule {
    fn default() -> Self {
        ThetaSchedule::Geometric {
            base: Q::from_integer(2.into()),
        }
    }
}

impl ThetaSchedule {
    pub fn geometric(base: Q) -> Result<Self> {
        if base <= Q::one() {
            return Err(Error::malformed("schedule.theta_base", "base must exceed 1"));
        }
        Ok(ThetaSchedule::Geometric { base })
    }

    pub fn user(values: Vec<Q>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::malformed("schedule.theta_list", "list is empty"));
        }
        if !values[0].is_positive() {
            return Err(Error::malformed("schedule.theta_list", "values must be positive"));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::malformed("schedule.theta_list", "values must be strictly increasing"));
        }
        Ok(ThetaSchedule::User { values })
    }

    pub fn from_section(s: Option<&ScheduleSection>) -> Result<Self> {
        let Some(s) = s else {
            return Ok(Self::default());
        };
        match (&s.theta_base, &s.theta_list) {
            (Some(_), Some(_)) => Err(Error::malformed("schedule", "give theta_base or theta_list, not both")),
            (Some(b), None) => {
                let base = parse_rational(b).map_err(|e| Error::malformed("schedule.theta_base", e.to_string()))?;
                Self::geometric(base)
            }
            (None, Some(list)) => {
                let mut values = Vec::with_capacity(list.len());
                for (i, v) in list.iter().enumerate() {
                    values.push(
                        parse_rational(v)
                            .map_err(|e| Error::malformed(format!("schedule.theta_list[{i}]"), e.to_string()))?,
                    );
                }
                Self::user(values)
            }
            (None, None) => Ok(Self::default()),
        }
    }

    /// theta(k) for k >= 1.
    pub fn value(&self, k: u32) -> Result<Q> {
        if k == 0 {
            return Err(Error::InvalidArgument("schedule index starts at 1".into()));
        }
        match self {
            ThetaSchedule::Geometric { base } => Ok(base.pow(k as i32)),
            ThetaSchedule::User { values } => values.get(k as usize - 1).cloned().ok_or_else(|| {
                Error::InvalidArgument(format!("schedule has {} values; k = {k} is past its end", values.len()))
            }),
        }
    }

    /// Largest valid k, if the schedule is finite.
    pub fn len(&self) -> Option<u32> {
        match self {
            ThetaSchedule::Geometric { .. } => None,
            ThetaSchedule::User { values } => Some(values.len() as u32),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball::{q_frac, q_int};

    #[test]
    fn geometric_and_user() {
        let g = ThetaSchedule::default();
        assert_eq!(g.value(3).unwrap(), q_int(8));
        assert!(g.value(0).is_err());
        let u = ThetaSchedule::user(vec![q_frac(3, 2), q_int(6)]).unwrap();
        assert_eq!(u.value(2).unwrap(), q_int(6));
        assert!(matches!(u.value(3), Err(Error::InvalidArgument(_))));
        assert!(ThetaSchedule::user(vec![q_int(6), q_int(6)]).is_err());
        assert!(ThetaSchedule::geometric(q_int(1)).is_err());
    }

    #[test]
    fn from_config_section() {
        let s = ScheduleSection {
            theta_base: Some("3/2".into()),
            theta_list: None,
        };
        let t = ThetaSchedule::from_section(Some(&s)).unwrap();
        assert_eq!(t.value(2).unwrap(), q_frac(9, 4));
        assert_eq!(ThetaSchedule::from_section(None).unwrap(), ThetaSchedule::default());
    }
}
