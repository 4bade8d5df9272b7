use std::ffi::{c_char, CStr, CString};
use std::ptr;

use dimapf_ffi::*;

const GRID: &str = "dimapf 1\nvertex 0 v1\nvertex 1 v2\nvertex 2 v3\nvertex 3 v4\n\
    arc v1 v2\narc v2 v1\narc v2 v3\narc v3 v2\narc v2 v4\narc v4 v2\n\
    agent C start v1 goal v2\nagent S start v4 goal v3\n";
const SWAP: &str = "dimapf 1\nvertex 0 v1\nvertex 1 v2\nvertex 2 v3\n\
    arc v1 v2\narc v2 v1\narc v2 v3\narc v3 v2\n\
    agent A start v1 goal v3\nagent B start v2 goal v1\n";

fn last_error() -> String {
    let p = dimapf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { dimapf_string_free(p) };
    s
}

fn parse(doc: &str) -> *mut DimapfInstance {
    let doc = CString::new(doc).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_instance_parse(doc.as_ptr(), &mut inst) },
        DimapfStatus::Ok
    );
    assert!(dimapf_last_error().is_null());
    inst
}

#[test]
fn grid_round_trip_and_solve() {
    let inst = parse(GRID);
    let (mut v, mut a, mut r) = (0, 0, 0);
    assert_eq!(
        unsafe { dimapf_instance_counts(inst, &mut v, &mut a, &mut r) },
        DimapfStatus::Ok
    );
    assert_eq!((v, a, r), (4, 6, 2));
    let mut dag = true;
    assert_eq!(
        unsafe { dimapf_instance_is_dag(inst, &mut dag) },
        DimapfStatus::Ok
    );
    assert!(!dag);

    let mut doc = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_instance_to_string(inst, &mut doc) },
        DimapfStatus::Ok
    );
    let text = take_string(doc);
    let again = parse(&text);
    let mut doc2 = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_instance_to_string(again, &mut doc2) },
        DimapfStatus::Ok
    );
    assert_eq!(take_string(doc2), text);

    let mut verdict = DimapfVerdict::Unsolvable;
    let mut plan = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_solve(inst, ptr::null(), &mut verdict, &mut plan) },
        DimapfStatus::Ok
    );
    assert_eq!(verdict, DimapfVerdict::Solvable);
    assert_eq!(unsafe { dimapf_plan_len(plan) }, 3);
    assert_eq!(
        unsafe { dimapf_validate_plan(inst, plan, ptr::null_mut()) },
        DimapfStatus::Ok
    );

    let mut plan_doc = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_plan_to_string(inst, plan, &mut plan_doc) },
        DimapfStatus::Ok
    );
    let plan_text = take_string(plan_doc);
    assert_eq!(plan_text.lines().count(), 3);
    let c = CString::new(plan_text).unwrap();
    let mut reparsed = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_plan_parse(inst, c.as_ptr(), &mut reparsed) },
        DimapfStatus::Ok
    );
    assert_eq!(unsafe { dimapf_plan_len(reparsed) }, 3);

    unsafe {
        dimapf_plan_free(reparsed);
        dimapf_plan_free(plan);
        dimapf_instance_free(again);
        dimapf_instance_free(inst);
    }
}

#[test]
fn verdicts_and_limits() {
    let swap = parse(SWAP);
    let mut verdict = DimapfVerdict::Solvable;
    let mut plan = ptr::dangling_mut::<DimapfPlan>();
    assert_eq!(
        unsafe { dimapf_solve(swap, ptr::null(), &mut verdict, &mut plan) },
        DimapfStatus::Ok
    );
    assert_eq!(verdict, DimapfVerdict::Unsolvable);
    assert!(plan.is_null());

    let grid = parse(GRID);
    let opts = DimapfSolveOptions {
        depth_bound: 2,
        ..Default::default()
    };
    assert_eq!(
        unsafe { dimapf_solve(grid, &opts, &mut verdict, ptr::null_mut()) },
        DimapfStatus::Ok
    );
    assert_eq!(verdict, DimapfVerdict::BoundExhausted);

    let opts = DimapfSolveOptions {
        max_states: 2,
        ..Default::default()
    };
    assert_eq!(
        unsafe { dimapf_solve(grid, &opts, &mut verdict, ptr::null_mut()) },
        DimapfStatus::ResourceLimit
    );
    assert!(last_error().contains("resource limit"));

    unsafe {
        dimapf_instance_free(swap);
        dimapf_instance_free(grid);
    }
}

#[test]
fn reduction_through_the_abi() {
    let cnf = CString::new("p cnf 3 2\n1 2 -3 0\n-1 2 3 0\n").unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_reduce_dimacs(cnf.as_ptr(), false, &mut inst) },
        DimapfStatus::Ok
    );
    let (mut v, mut r) = (0, 0);
    assert_eq!(
        unsafe { dimapf_instance_counts(inst, &mut v, ptr::null_mut(), &mut r) },
        DimapfStatus::Ok
    );
    assert_eq!((v, r), (25, 14));
    let mut dag = false;
    assert_eq!(
        unsafe { dimapf_instance_is_dag(inst, &mut dag) },
        DimapfStatus::Ok
    );
    assert!(dag);
    unsafe { dimapf_instance_free(inst) };

    let short = CString::new("p cnf 2 1\n1 2 0\n").unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_reduce_dimacs(short.as_ptr(), false, &mut inst) },
        DimapfStatus::ParseError
    );
    assert!(inst.is_null());
    assert!(last_error().contains("line 2"));
    assert_eq!(
        unsafe { dimapf_reduce_dimacs(short.as_ptr(), true, &mut inst) },
        DimapfStatus::Ok
    );
    unsafe { dimapf_instance_free(inst) };
}

#[test]
fn invalid_plans_report_the_failing_move() {
    let inst = parse(GRID);
    let mut plan = ptr::null_mut();
    let doc = CString::new("move S v4 v2\nmove S v2 v3\n").unwrap();
    assert_eq!(
        unsafe { dimapf_plan_parse(inst, doc.as_ptr(), &mut plan) },
        DimapfStatus::Ok
    );
    let mut at = usize::MAX;
    assert_eq!(
        unsafe { dimapf_validate_plan(inst, plan, &mut at) },
        DimapfStatus::InvalidPlan
    );
    assert_eq!(at, 2);
    assert!(last_error().contains("goal not reached"));
    unsafe { dimapf_plan_free(plan) };

    let doc = CString::new("move C v1 v2\nmove S v4 v3\n").unwrap();
    let mut plan = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_plan_parse(inst, doc.as_ptr(), &mut plan) },
        DimapfStatus::Ok
    );
    assert_eq!(
        unsafe { dimapf_validate_plan(inst, plan, &mut at) },
        DimapfStatus::InvalidPlan
    );
    assert_eq!(at, 1);
    unsafe { dimapf_plan_free(plan) };

    let doc = CString::new("move Z v1 v2\n").unwrap();
    let mut plan = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_plan_parse(inst, doc.as_ptr(), &mut plan) },
        DimapfStatus::ParseError
    );
    unsafe { dimapf_instance_free(inst) };
}

#[test]
fn bad_arguments() {
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { dimapf_instance_parse(ptr::null(), &mut inst) },
        DimapfStatus::NullArgument
    );
    let doc = CString::new("dimapf 1\nvertex 0 a\n").unwrap();
    assert_eq!(
        unsafe { dimapf_instance_parse(doc.as_ptr(), ptr::null_mut()) },
        DimapfStatus::NullArgument
    );

    let bytes = b"dimapf 1\nvertex 0 \xff\n\0";
    assert_eq!(
        unsafe { dimapf_instance_parse(bytes.as_ptr() as *const c_char, &mut inst) },
        DimapfStatus::InvalidUtf8
    );
    let garbage = CString::new("not an instance").unwrap();
    assert_eq!(
        unsafe { dimapf_instance_parse(garbage.as_ptr(), &mut inst) },
        DimapfStatus::ParseError
    );
    let two_on_one =
        CString::new("dimapf 1\nvertex 0 a\nagent p start a goal a\nagent q start a goal a\n")
            .unwrap();
    assert_eq!(
        unsafe { dimapf_instance_parse(two_on_one.as_ptr(), &mut inst) },
        DimapfStatus::InvalidInstance
    );
    assert!(last_error().contains("not injective"));
    assert!(inst.is_null());

    let mut verdict = DimapfVerdict::Solvable;
    assert_eq!(
        unsafe { dimapf_solve(ptr::null(), ptr::null(), &mut verdict, ptr::null_mut()) },
        DimapfStatus::NullArgument
    );
    assert_eq!(unsafe { dimapf_plan_len(ptr::null()) }, 0);
    unsafe {
        dimapf_instance_free(ptr::null_mut());
        dimapf_plan_free(ptr::null_mut());
        dimapf_string_free(ptr::null_mut());
    }
}
