use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use hypforms_ffi::*;

fn parse(text: &str) -> *mut HypForm {
    let c = CString::new(text).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { hyp_form_parse(c.as_ptr(), &mut f) }, HypStatus::Ok);
    assert!(!f.is_null());
    f
}

fn last_error() -> String {
    let p = hyp_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn parse_certify_classify_roundtrip() {
    let f = parse("x*(x^2 - y^2)");
    unsafe {
        let mut d = 0;
        assert_eq!(hyp_form_degree(f, &mut d), HypStatus::Ok);
        assert_eq!(d, 3);
        let mut s = ptr::null_mut();
        assert_eq!(hyp_form_to_string(f, &mut s), HypStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "x^3 - x*y^2");
        hyp_string_free(s);

        let (mut h, mut p) = (false, false);
        assert_eq!(hyp_is_hyperbolic(f, &mut h), HypStatus::Ok);
        assert_eq!(hyp_is_hyperbolic_polar(f, &mut p), HypStatus::Ok);
        assert!(h && p);
        assert!(hyp_last_error().is_null());

        let mut c = HypComponent {
            degree: 0,
            index: 0,
            component_rank: 0,
            factor_count: 0,
        };
        assert_eq!(hyp_classify(f, &mut c), HypStatus::Ok);
        assert_eq!(
            c,
            HypComponent {
                degree: 3,
                index: -1,
                component_rank: 0,
                factor_count: 3
            }
        );
        hyp_form_free(f);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut f = ptr::null_mut();
        let bad = CString::new("x + y^2").unwrap();
        assert_eq!(hyp_form_parse(bad.as_ptr(), &mut f), HypStatus::ParseError);
        assert!(f.is_null());
        assert!(last_error().contains("different total degree"));

        assert_eq!(hyp_form_parse(ptr::null(), &mut f), HypStatus::NullPointer);
        let ok = CString::new("x^2 - y^2").unwrap();
        assert_eq!(
            hyp_form_parse(ok.as_ptr(), ptr::null_mut()),
            HypStatus::NullPointer
        );
        let mut d = 0;
        assert_eq!(hyp_form_degree(ptr::null(), &mut d), HypStatus::NullPointer);
        assert_eq!(last_error(), "form is NULL");

        let not_utf8 = [0xffu8, 0];
        assert_eq!(
            hyp_form_parse(not_utf8.as_ptr().cast(), &mut f),
            HypStatus::InvalidUtf8
        );

        let g4 = parse("(x^2-y^2)*(x^2+y^2)");
        let mut h = true;
        assert_eq!(hyp_is_hyperbolic(g4, &mut h), HypStatus::Ok);
        assert!(!h);
        let mut c = HypComponent {
            degree: 0,
            index: 0,
            component_rank: 0,
            factor_count: 0,
        };
        assert_eq!(hyp_classify(g4, &mut c), HypStatus::NotHyperbolic);
        assert_eq!(c.degree, 0);
        let mut s = ptr::null_mut();
        assert_eq!(hyp_render_svg(g4, &mut s), HypStatus::NotHyperbolic);
        assert!(s.is_null());
        hyp_form_free(g4);

        assert_eq!(hyp_arnold(9, 2, &mut f), HypStatus::InvalidArgument);
        assert_eq!(hyp_representative(9, 4, &mut f), HypStatus::InvalidArgument);
        assert!(last_error().contains("4 components"));
        hyp_form_free(ptr::null_mut());
        hyp_string_free(ptr::null_mut());
    }
}

#[test]
fn families_through_handles() {
    unsafe {
        let mut n = 0;
        assert_eq!(hyp_representative_count(9, &mut n), HypStatus::Ok);
        assert_eq!(n, 4);
        let mut got = Vec::new();
        for rank in 0..n {
            let mut f = ptr::null_mut();
            assert_eq!(hyp_representative(9, rank, &mut f), HypStatus::Ok);
            let mut c = HypComponent {
                degree: 0,
                index: 0,
                component_rank: 0,
                factor_count: 0,
            };
            assert_eq!(hyp_classify(f, &mut c), HypStatus::Ok);
            got.push((c.index, c.component_rank));
            hyp_form_free(f);
        }
        got.sort();
        assert_eq!(got, vec![(-7, 3), (-5, 2), (-3, 1), (-1, 0)]);

        let mut f = ptr::null_mut();
        assert_eq!(hyp_arnold(5, 3, &mut f), HypStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(hyp_form_to_string(f, &mut s), HypStatus::Ok);
        assert_eq!(
            CStr::from_ptr(s).to_str().unwrap(),
            "x^5 - 2*x^3*y^2 - 3*x*y^4"
        );
        hyp_string_free(s);
        assert_eq!(hyp_render_svg(f, &mut s), HypStatus::Ok);
        assert!(CStr::from_ptr(s).to_str().unwrap().starts_with("<svg"));
        hyp_string_free(s);
        hyp_form_free(f);
    }
}

#[test]
fn last_error_is_per_thread() {
    let bad = CString::new("x^").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { hyp_form_parse(bad.as_ptr(), &mut f) },
        HypStatus::ParseError
    );
    std::thread::spawn(|| assert!(hyp_last_error().is_null()))
        .join()
        .unwrap();
    assert!(!hyp_last_error().is_null());
}

const HEADER: &str = include_str!("../include/hypforms.h");

#[test]
fn header_declares_the_api() {
    for name in [
        "typedef struct HypForm HypForm",
        "HYP_STATUS_OK = 0",
        "HYP_STATUS_PANIC = 7",
        "HypStatus hyp_form_parse(const char *text, HypForm **out)",
        "void hyp_form_free(HypForm *form)",
        "HypStatus hyp_classify(const HypForm *form, HypComponent *out)",
        "const char *hyp_last_error(void)",
        "void hyp_string_free(char *s)",
        "HypStatus hyp_render_svg(const HypForm *form, char **out)",
    ] {
        assert!(HEADER.contains(name), "header lacks `{name}`");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = std::env::temp_dir().join(format!("hypforms-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"hypforms.h\"\n\
         int main(void) {\n\
           HypForm *f = 0;\n\
           HypStatus s = hyp_form_parse(\"x^3 - x*y^2\", &f);\n\
           HypComponent c;\n\
           if (s == HYP_STATUS_OK) s = hyp_classify(f, &c);\n\
           hyp_form_free(f);\n\
           return s == HYP_STATUS_OK ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let out = Command::new("cc")
        .args([
            "-std=c99",
            "-Wall",
            "-Werror",
            "-fsyntax-only",
            "-I",
            include,
        ])
        .arg(&src)
        .output()
        .expect("a C compiler is installed");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
