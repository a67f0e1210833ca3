#pragma once

#include <gtest/gtest.h>

#include <functional>
#include <string>
#include <vector>

#include "nanogrid/converter.hpp"
#include "nanogrid/engine.hpp"
#include "nanogrid/errors.hpp"

namespace nanogrid::testutil {

// Runs f, requires it to throw Error with the given code, hands back the
// message so callers can check its contents.
inline std::string expect_error(errc want, const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        EXPECT_EQ(static_cast<int>(e.code()), static_cast<int>(want)) << e.what();
        return e.what();
    } catch (const std::exception& e) {
        ADD_FAILURE() << "wrong exception type: " << e.what();
        return {};
    }
    ADD_FAILURE() << "expected an Error, nothing was thrown";
    return {};
}

inline EfficiencyCurve flat_curve(double eta) {
    return EfficiencyCurve({{0.5, eta}, {1.0, eta}});
}

// Single-category scenario: all demand on hvac, no wiring resistance,
// ideal-ish flat converters. The base for most engine-level tests.
inline Scenario make_scenario(std::vector<double> hvac_kw, std::vector<double> pv_kw,
                              double dt_hours = 1.0) {
    std::vector<double> zeros(hvac_kw.size(), 0.0);
    LoadProfile loads(TimeSeries(std::move(hvac_kw), dt_hours),
                      TimeSeries(zeros, dt_hours), TimeSeries(zeros, dt_hours),
                      TimeSeries(zeros, dt_hours));
    Scenario s(std::move(loads), TimeSeries(std::move(pv_kw), dt_hours));
    s.label = "test";
    s.pv_converter = {ConverterRole::pv, 4.0, 1, flat_curve(0.96)};
    s.ac_dc_converter = {ConverterRole::ac_dc, 8.0, 1, flat_curve(0.9)};
    return s;
}

}  // namespace nanogrid::testutil
