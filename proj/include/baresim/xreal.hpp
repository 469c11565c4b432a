#ifndef BARESIM_XREAL_HPP
#define BARESIM_XREAL_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace baresim {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parameter_error : error {
    using error::error;
};
struct domain_error : error {
    using error::error;
};
struct precondition_error : error {
    using error::error;
};
struct unsupported_family : error {
    using error::error;
};
struct numeric_error : error {
    using error::error;
};
struct config_error : error {
    using error::error;
};
struct io_error : error {
    using error::error;
};

inline constexpr double inf = std::numeric_limits<double>::infinity();

// extended real: finite value or a signed infinity, never NaN
class xreal {
public:
    enum class tag { finite, pos_inf, neg_inf };

    constexpr xreal() = default;
    constexpr xreal(double v) { assign(v); }

    static constexpr xreal pos_infinity() { return xreal(tag::pos_inf); }
    static constexpr xreal neg_infinity() { return xreal(tag::neg_inf); }

    constexpr tag kind() const { return tag_; }
    constexpr bool is_finite() const { return tag_ == tag::finite; }
    constexpr bool is_pos_inf() const { return tag_ == tag::pos_inf; }
    constexpr bool is_neg_inf() const { return tag_ == tag::neg_inf; }

    // finite part; throws on infinities
    double finite_value() const {
        if (tag_ != tag::finite) throw numeric_error("xreal: not finite");
        return v_;
    }
    // IEEE view, infinities mapped to +-inf
    constexpr double value() const {
        return tag_ == tag::finite ? v_ : (tag_ == tag::pos_inf ? inf : -inf);
    }
    constexpr explicit operator double() const { return value(); }

    friend constexpr bool operator==(const xreal& a, const xreal& b) {
        return a.tag_ == b.tag_ && (a.tag_ != tag::finite || a.v_ == b.v_);
    }
    friend constexpr bool operator<(const xreal& a, const xreal& b) { return a.value() < b.value(); }
    friend constexpr bool operator>(const xreal& a, const xreal& b) { return b < a; }
    friend constexpr bool operator<=(const xreal& a, const xreal& b) { return !(b < a); }
    friend constexpr bool operator>=(const xreal& a, const xreal& b) { return !(a < b); }
    friend constexpr xreal operator-(const xreal& a) {
        if (a.tag_ == tag::pos_inf) return neg_infinity();
        if (a.tag_ == tag::neg_inf) return pos_infinity();
        return xreal(-a.v_);
    }

    std::string to_string() const {
        if (tag_ == tag::pos_inf) return "inf";
        if (tag_ == tag::neg_inf) return "-inf";
        return std::to_string(v_);
    }

private:
    constexpr explicit xreal(tag t) : tag_(t) {}
    constexpr void assign(double v) {
        if (v == inf) {
            tag_ = tag::pos_inf;
        } else if (v == -inf) {
            tag_ = tag::neg_inf;
        } else if (v != v) {
            throw numeric_error("xreal: NaN");
        } else {
            v_ = v;
        }
    }
    tag tag_ = tag::finite;
    double v_ = 0.0;
};

} // namespace baresim

#endif
