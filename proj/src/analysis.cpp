#include "quadratrix/analysis.hpp"

#include <json.hpp>
#include <map>
#include <sstream>
#include <vector>

#include "quadratrix/bigfloat.hpp"
#include "quadratrix/elaborate.hpp"
#include "quadratrix/error.hpp"

namespace quadratrix {

namespace {

constexpr int kStartPrecision = 64;
constexpr int kMaxPrecision = 1 << 16;

mpz_class pow10_z(int n) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(n));
    return p;
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

std::string format_scaled(const mpz_class& n, int digits) {
    mpz_class a = ::abs(n);
    mpz_class scale = pow10_z(digits);
    mpz_class ip = a / scale;
    mpz_class fp = a % scale;
    std::string frac = fp.get_str();
    frac.insert(0, static_cast<size_t>(digits) - frac.size(), '0');
    return (sgn(n) < 0 ? std::string("-") : std::string()) + ip.get_str() + "." + frac;
}

// floor(pi * 10^k), certified by interval refinement. pi is irrational, so
// the enclosure eventually separates from every integer.
mpz_class pi_scaled_floor(int k) {
    mpz_class scale = pow10_z(k);
    for (int prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        FloatInterval iv = FloatInterval::pi(prec);
        mpz_class lo = floor_q(iv.lo_rational().raw() * scale);
        mpz_class hi = floor_q(iv.hi_rational().raw() * scale);
        if (lo == hi) return lo;
    }
    throw Error(Error::Kind::Defect, "pi refinement exceeded the precision cap");
}

// Truncated fractional digits of v and pi agree through how many places?
int places_correct_vs_pi(const Constructible& v) {
    if (v.floor() != pi_scaled_floor(0)) return 0;
    mpz_class prev_v = v.floor();
    mpz_class prev_pi = pi_scaled_floor(0);
    mpz_class pow(1);
    for (int k = 1; k <= 60; ++k) {
        pow *= 10;
        Constructible scaled = v * Constructible(Rational(pow, mpz_class(1)));
        mpz_class fv = scaled.floor();
        mpz_class fpi = pi_scaled_floor(k);
        if (fv - 10 * prev_v != fpi - 10 * prev_pi) return k - 1;
        prev_v = fv;
        prev_pi = fpi;
    }
    return 60;
}

} // namespace

std::string pi_decimal_truncated(int digits) {
    if (digits < 1) throw Error(Error::Kind::Usage, "digit count must be positive");
    return format_scaled(pi_scaled_floor(digits), digits);
}

ErrorReport pi_error(const Constructible& v, int ratio_digits) {
    if (v.sign() <= 0) throw Error(Error::Kind::Usage, "pi_error requires a positive value");
    if (ratio_digits < 1) throw Error(Error::Kind::Usage, "ratio digit count must be positive");
    ErrorReport r;
    r.value_decimal = v.to_decimal_truncated(20);
    mpz_class scale = pow10_z(ratio_digits);
    for (int prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        Interval vi = v.approx_interval(prec);
        FloatInterval piv = FloatInterval::pi(prec);
        // positive over positive: outward ratio bounds in exact rationals
        mpq_class lo = vi.lo.raw() / piv.hi_rational().raw();
        mpq_class hi = vi.hi.raw() / piv.lo_rational().raw();
        mpz_class flo = floor_q(lo * scale);
        mpz_class fhi = floor_q(hi * scale);
        if (flo == fhi) {
            r.ratio_to_pi = format_scaled(flo, ratio_digits);
            r.places_correct = places_correct_vs_pi(v);
            return r;
        }
    }
    // A ratio exactly on a digit boundary would mean v is a rational multiple
    // of pi, which no constructible value is.
    throw Error(Error::Kind::Defect, "ratio refinement exceeded the precision cap");
}

std::string MetricsReport::max_length_decimal() const {
    return has_lengths ? max_length.to_decimal(20) : "n/a";
}

std::string MetricsReport::min_positive_length_decimal() const {
    return has_lengths ? min_positive_length.to_decimal(20) : "n/a";
}

MetricsReport metrics(const Program& p) {
    MetricsReport r;
    r.program = p.name;
    for (const Step& s : p.steps) {
        if (step_expands(s)) ++r.macro_steps;
    }
    Program prim = elaborate(p);
    Workspace w = execute(prim);

    std::vector<Constructible> lengths;
    for (const Step& s : prim.steps) {
        switch (s.kind) {
            case Step::Kind::InitialPoint:
            case Step::Kind::Intersect:
                ++r.primitive_steps;
                break;
            case Step::Kind::DrawLine:
            case Step::Kind::DrawCircle:
                ++r.primitive_steps;
                lengths.push_back(distance(w.point(s.arg1), w.point(s.arg2)));
                break;
            case Step::Kind::OnRay:
                ++r.primitive_steps;
                lengths.push_back(eval_len(s.length, w)); // compass opening
                break;
            case Step::Kind::LengthDef:
                break; // pure naming, no construction work
            default:
                throw Error(Error::Kind::Defect, "macro step survived elaboration");
        }
    }

    for (const Constructible& len : lengths) {
        if (len.sign() <= 0) continue;
        if (!r.has_lengths) {
            r.max_length = len;
            r.min_positive_length = len;
            r.has_lengths = true;
            continue;
        }
        if (len > r.max_length) r.max_length = len;
        if (len < r.min_positive_length) r.min_positive_length = len;
    }

    // geometrically distinct points among all bindings
    std::map<std::string, std::vector<Point>> buckets;
    int distinct = 0;
    for (const auto& name : w.order) {
        const Point* pt = std::get_if<Point>(&w.bindings.at(name));
        if (!pt) continue;
        std::string key = pt->x.to_decimal(25) + "|" + pt->y.to_decimal(25);
        auto& bucket = buckets[key];
        bool seen = false;
        for (const Point& other : bucket) {
            if (*pt == other) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            bucket.push_back(*pt);
            ++distinct;
        }
    }
    r.distinct_points = distinct;
    return r;
}

std::string metrics_to_text(const MetricsReport& r) {
    std::ostringstream out;
    out << "program: " << r.program << "\n";
    out << "primitive_steps: " << r.primitive_steps << "\n";
    out << "macro_steps: " << r.macro_steps << "\n";
    out << "max_length: " << r.max_length_decimal() << "\n";
    out << "min_positive_length: " << r.min_positive_length_decimal() << "\n";
    out << "distinct_points: " << r.distinct_points << "\n";
    return out.str();
}

std::string metrics_to_json(const MetricsReport& r) {
    nlohmann::ordered_json j;
    j["type"] = "metrics";
    j["program"] = r.program;
    j["primitive_steps"] = r.primitive_steps;
    j["macro_steps"] = r.macro_steps;
    if (r.has_lengths) {
        j["max_length"] = r.max_length_decimal();
        j["min_positive_length"] = r.min_positive_length_decimal();
    } else {
        j["max_length"] = nullptr;
        j["min_positive_length"] = nullptr;
    }
    j["distinct_points"] = r.distinct_points;
    return j.dump() + "\n";
}

std::string error_report_to_text(const ErrorReport& r) {
    std::ostringstream out;
    out << "value_decimal: " << r.value_decimal << "\n";
    out << "ratio_to_pi: " << r.ratio_to_pi << "\n";
    out << "places_correct: " << r.places_correct << "\n";
    return out.str();
}

std::string error_report_to_json(const ErrorReport& r) {
    nlohmann::ordered_json j;
    j["type"] = "pi_error";
    j["value_decimal"] = r.value_decimal;
    j["ratio_to_pi"] = r.ratio_to_pi;
    j["places_correct"] = r.places_correct;
    return j.dump() + "\n";
}

} // namespace quadratrix
