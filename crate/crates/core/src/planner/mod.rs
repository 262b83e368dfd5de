//! Priced plans: driver-pessimal and driver-optimal competitive equilibria,
//! their verification (best responses, envy-freeness, budget balance, core
//! membership) and rider-side VCG prices.

mod best_path;
mod core_check;
mod plan;
mod vcg;
mod verify;

pub use best_path::{best_driver_value, best_path_value, best_path_values};
pub use core_check::{check_core_sampled, check_core_utilities, BlockingCoalition, CoreReport};
pub use plan::{plan_driver_optimal, plan_driver_pessimal, plan_from_flow, Plan, PlanKind, PriceEntry, PriceTable};
pub use vcg::{rider_vcg_check, rider_vcg_price, VcgCheck};
pub use verify::{verify_ce, verify_outcome, CEReport, DriverViolation, RiderViolation};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::market::Trip;
    use crate::Money;

    fn u(x: i64) -> Money {
        Money::from_units(x)
    }

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    #[test]
    fn superbowl_pessimal_prices() {
        let e = fixture("superbowl").unwrap();
        let plan = plan_driver_pessimal(&e).unwrap();
        let p = |a, b, t| plan.prices.get(Trip::new(a, b, t));
        assert_eq!(p(C, B, 0), u(55));
        assert_eq!(p(B, C, 0), u(0));
        assert_eq!(p(B, A, 0), u(70));
        assert_eq!(p(C, B, 1), u(75));
        assert_eq!(p(B, B, 1), u(20));
        assert_eq!(p(C, A, 1), u(80));
        assert_eq!(plan.driver_utilities(&e), vec![u(50); 3]);
        assert!(verify_ce(&e, &plan).is_ce());
        assert_eq!(best_path_value(&e, &plan.prices, C, 0), u(50));
    }

    #[test]
    fn lowered_price_breaks_rider_best_response() {
        let e = fixture("superbowl").unwrap();
        let mut plan = plan_driver_pessimal(&e).unwrap();
        plan.prices.set(Trip::new(C, A, 1), u(79));
        let report = verify_ce(&e, &plan);
        assert_eq!(report.rider_br_violations.len(), 1);
        assert_eq!(report.rider_br_violations[0].rider, 8);
    }

    #[test]
    fn naive_replan_prices() {
        let e = fixture("naive-replan").unwrap();
        let plan = plan_driver_pessimal(&e).unwrap();
        assert_eq!(plan.prices.get(Trip::new(B, B, 1)), u(5));
        assert_eq!(plan.prices.get(Trip::new(A, A, 1)), u(5));
    }

    #[test]
    fn driver_optimal_prices() {
        let e = fixture("driver-optimal").unwrap();
        let plan = plan_driver_optimal(&e).unwrap();
        assert_eq!(plan.prices.get(Trip::new(C, C, 1)), u(0));
        assert_eq!(plan.prices.get(Trip::new(C, C, 2)), u(1));
        assert_eq!(plan.prices.get(Trip::new(A, A, 2)), u(1));
        assert_eq!(plan.driver_utilities(&e), vec![u(1), u(1)]);
        assert!(verify_ce(&e, &plan).is_ce());
    }

    #[test]
    fn rider_vcg_prices() {
        let e = fixture("rider-vcg").unwrap();
        assert_eq!(rider_vcg_price(&e, 0).unwrap(), u(2));
        assert_eq!(rider_vcg_price(&e, 1).unwrap(), u(3));
        assert!(matches!(rider_vcg_price(&e, 2), Err(crate::Error::RiderNotServed(2))));
        for j in 0..2 {
            assert!(rider_vcg_check(&e, j).unwrap().holds());
        }
        let plan = plan_driver_pessimal(&e).unwrap();
        assert_eq!(
            plan.prices.get(Trip::new(A, A, 0)) + plan.prices.get(Trip::new(A, A, 1)),
            u(8)
        );
        assert_eq!(plan.prices.get(Trip::new(A, B, 0)), u(8));
    }

    #[test]
    fn superbowl_is_in_the_core() {
        let e = fixture("superbowl").unwrap();
        let plan = plan_driver_pessimal(&e).unwrap();
        let report = check_core_sampled(&e, &plan, 0, 0).unwrap();
        assert!(report.exhaustive);
        assert!(report.in_core());
    }
}
