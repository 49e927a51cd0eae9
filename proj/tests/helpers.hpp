// small shared helpers for the unit tests: an exception trap that records
// the error code + message, and terse matrix builders.

#pragma once

#include <initializer_list>
#include <string>

#include "matrix.hpp"

struct Caught {
    bool threw = false;
    qmetro::errc code = qmetro::errc::internal;
    std::string message;
};

// run fn, catch the library error (if any) and hand back code/message so the
// test can assert on both without repeating try/catch boilerplate
template <typename Fn>
Caught trap(Fn&& fn) {
    Caught c;
    try {
        fn();
    } catch (const qmetro::qm_error& e) {
        c.threw = true;
        c.code = e.code;
        c.message = e.what();
    }
    return c;
}

inline bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

inline qmetro::cmat mat2(qmetro::cx a00, qmetro::cx a01, qmetro::cx a10, qmetro::cx a11) {
    qmetro::cmat m(2);
    m(0, 0) = a00;
    m(0, 1) = a01;
    m(1, 0) = a10;
    m(1, 1) = a11;
    return m;
}

inline qmetro::cmat diagmat(std::initializer_list<double> entries) {
    qmetro::cmat m(static_cast<int>(entries.size()));
    int i = 0;
    for (double v : entries) {
        m(i, i) = v;
        ++i;
    }
    return m;
}
