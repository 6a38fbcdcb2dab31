#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "prc/errors.hpp"
#include "prc/pipeline.hpp"
#include "prc/series.hpp"
#include "prc/simulate.hpp"

using namespace prc;
using Catch::Approx;
using test_helpers::TempDir;

namespace {

/// Small diode dataset on disk shared by the pipeline tests.
struct Fixture {
    TempDir tmp;
    SignalSeries input = generate_sine_wave(0, 5, 20);  // 100 samples

    Fixture() {
        const auto w = make_random_windows(6, 13);
        simulate_diode_dataset(input, w, DiodeCircuitParams{}, tmp.path());
    }

    Pipeline make() const {
        ParseParams parse;
        parse.xs_col = "t";
        parse.readout_col = "Voltage";
        return Pipeline(tmp.path(), "scan", parse, ProcessParams{});
    }
};

}  // namespace

TEST_CASE("pipeline assembles eagerly") {
    Fixture f;
    Pipeline p = f.make();
    CHECK(p.get_df_length() == 100);
    CHECK(p.matrix().cols() == 6);
    CHECK(p.scan_set().records.size() == 100);
}

TEST_CASE("pipeline construction surfaces ingest errors") {
    TempDir empty;
    ParseParams parse;
    parse.xs_col = "t";
    parse.readout_col = "Voltage";
    try {
        Pipeline(empty.path(), "scan", parse, ProcessParams{});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_directory);
    }
}

TEST_CASE("targets must match the reservoir length") {
    Fixture f;
    Pipeline p = f.make();
    CHECK_NOTHROW(p.define_target(generate_square_wave(100, 5)));
    try {
        p.define_target(generate_square_wave(98, 7));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::length_mismatch);
    }
}

TEST_CASE("state machine: run needs a target, getters need a run") {
    Fixture f;
    Pipeline p = f.make();
    try {
        p.run(RcParams{});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_target);
    }
    try {
        p.get_rc_results();
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_run);
    }
    try {
        p.get_non_linearity();
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_input);
    }
}

TEST_CASE("run populates all result fields with consistent shapes") {
    Fixture f;
    Pipeline p = f.make();
    p.define_target(generate_square_wave(100, 5));
    RcParams rc;
    rc.model.params.alpha = 1e-6;
    rc.tau = 3;
    p.run(rc);

    const RcResults& r = p.get_rc_results();
    const Eigen::Index aligned = 100 - rc.tau;
    CHECK(r.x_train.rows() + r.x_test.rows() == aligned);
    CHECK(r.y_train.size() == r.x_train.rows());
    CHECK(r.y_test.size() == r.x_test.rows());
    CHECK(r.train_pred.size() == r.x_train.rows());
    CHECK(r.test_pred.size() == r.x_test.rows());
    CHECK(r.train_error >= 0.0);
    CHECK(r.test_error >= 0.0);
    CHECK(p.get_readout().weights.size() == 6);
}

TEST_CASE("transformation run beats the variance floor") {
    Fixture f;
    Pipeline p = f.make();
    const auto target = generate_square_wave(100, 5);
    double var = 0.0, mean = 0.0;
    for (double v : target.values) mean += v;
    mean /= target.values.size();
    for (double v : target.values) var += (v - mean) * (v - mean);
    var /= target.values.size();

    p.define_target(target);
    RcParams rc;
    rc.model.params.alpha = 1e-6;
    p.run(rc);
    CHECK(p.get_rc_results().test_error < 0.5 * var);
}

TEST_CASE("re-running overwrites results deterministically") {
    Fixture f;
    Pipeline p = f.make();
    p.define_target(generate_square_wave(100, 5));
    RcParams rc;
    rc.model.params.alpha = 1e-6;
    p.run(rc);
    const double first_test = p.get_rc_results().test_error;
    const Eigen::VectorXd first_weights = p.get_readout().weights;
    p.run(rc);
    CHECK(p.get_rc_results().test_error == first_test);
    CHECK(p.get_readout().weights == first_weights);

    rc.tau = 1;
    p.run(rc);
    CHECK(p.get_rc_results().x_train.rows() + p.get_rc_results().x_test.rows() == 99);
}

TEST_CASE("end-to-end determinism from identical directories") {
    Fixture f;
    Pipeline a = f.make();
    Pipeline b = f.make();
    a.define_target(generate_sawtooth_wave(100, 5));
    b.define_target(generate_sawtooth_wave(100, 5));
    RcParams rc;
    rc.model.params.alpha = 1e-3;
    a.run(rc);
    b.run(rc);
    CHECK(a.get_rc_results().train_pred == b.get_rc_results().train_pred);
    CHECK(a.get_rc_results().test_pred == b.get_rc_results().test_pred);
    CHECK(a.get_readout().weights == b.get_readout().weights);
}

TEST_CASE("extreme test sizes still leave a training row") {
    TempDir tmp;
    SignalSeries input = generate_sine_wave(10, 2);
    simulate_diode_dataset(input, make_random_windows(3, 2), DiodeCircuitParams{}, tmp.path());
    ParseParams parse;
    parse.xs_col = "t";
    parse.readout_col = "Voltage";
    Pipeline p(tmp.path(), "scan", parse, ProcessParams{});
    p.define_target(generate_square_wave(10, 2));
    RcParams rc;
    rc.test_size = 0.999;
    p.run(rc);  // ceil(0.001*10) = 1 train row
    CHECK(p.get_rc_results().x_train.rows() == 1);
    CHECK(p.get_rc_results().x_test.rows() == 9);
}

TEST_CASE("logistic readout classifies a binary target") {
    Fixture f;
    Pipeline p = f.make();
    p.define_target(generate_square_wave(100, 5));
    RcParams rc;
    rc.model.kind = ModelKind::logistic;
    rc.model.params.alpha = 1e-3;
    rc.model.params.tol = 1e-8;
    p.run(rc);

    const RcResults& r = p.get_rc_results();
    for (Eigen::Index i = 0; i < r.test_pred.size(); ++i) {
        REQUIRE(r.test_pred(i) >= 0.0);
        REQUIRE(r.test_pred(i) <= 1.0);
    }
    // Probabilities against a 0/1 target: better than always answering 0.5.
    CHECK(r.test_error < 0.25);
}

TEST_CASE("linear readout is ridge at alpha zero") {
    Fixture f;
    Pipeline a = f.make();
    Pipeline b = f.make();
    a.define_target(generate_sawtooth_wave(100, 5));
    b.define_target(generate_sawtooth_wave(100, 5));
    RcParams linear;
    linear.model.kind = ModelKind::linear;
    RcParams ridge;
    ridge.model.kind = ModelKind::ridge;
    ridge.model.params.alpha = 0.0;
    a.run(linear);
    b.run(ridge);
    CHECK((a.get_readout().weights - b.get_readout().weights).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("metrics getters delegate to the metrics module") {
    Fixture f;
    Pipeline p = f.make();
    p.define_input(f.input);
    const double nl = p.get_non_linearity();
    CHECK(nl >= 0.0);
    CHECK(nl <= 1.0 + 1e-9);

    const auto [total, per_lag] = p.get_linear_memory_capacity(8, false);
    REQUIRE(per_lag.size() == 8);
    double sum = 0.0;
    for (double v : per_lag) sum += v;
    CHECK(total == sum);

    try {
        p.define_input(generate_sine_wave(99, 3));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::length_mismatch);
    }
}
