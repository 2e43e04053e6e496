use maxcurve::report::Recorder;
use maxcurve::runner::{chunks, count, CHUNK};
use maxcurve::suite::{spectrum, write_csv};
use maxcurve_core::curves::count as count_seq;
use maxcurve_core::genus::subcover_pairs;
use maxcurve_core::{CurveSpec, Family, FieldCtx};

#[test]
fn chunks_cover_the_domain() {
    assert!(chunks(0).is_empty());
    let c = chunks(3 * CHUNK + 5);
    assert_eq!(c.len(), 4);
    assert_eq!(c[0], 0..CHUNK);
    assert_eq!(c[3], 3 * CHUNK..3 * CHUNK + 5);
}

#[test]
fn parallel_equals_sequential() {
    let ctx = FieldCtx::for_q(4, 3, 1 << 22).unwrap();
    let mut specs: Vec<CurveSpec> = [Family::Xn, Family::Ggs, Family::Hermitian, Family::EtaZ, Family::RhoZ]
        .into_iter()
        .map(|f| CurveSpec::new(f, 4, 3))
        .collect();
    specs.extend(subcover_pairs(4, 3).unwrap().into_iter().map(|(a, b)| CurveSpec::subcover(4, 3, a, b)));
    for s in specs {
        let seq = count_seq(&ctx, &s).unwrap();
        for t in [1, 3, 0] {
            assert_eq!(count(&ctx, &s, t).unwrap(), seq, "{s:?}");
        }
        assert!(seq.maximal, "{s:?}");
    }
}

#[test]
fn csv_rows() {
    let mut rec = Recorder::new(false, None);
    let rows = spectrum(&mut rec, 7, 5).unwrap();
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), rows.len() + 1);
    assert!(rec.items().iter().all(|i| i.pass));
}
