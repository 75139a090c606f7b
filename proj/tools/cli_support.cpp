#include "cli_support.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace shiftlab::cli {

namespace {

double parse_real(const std::string& text) {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw DomainError("malformed number: " + text);
    return value;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    if (text.empty()) throw DomainError("empty complex literal");
    if (text.back() != 'i') return Complex{parse_real(text), 0.0};

    std::string body = text.substr(0, text.size() - 1);
    if (body.empty() || body == "+" || body == "-")
        return Complex{0.0, body == "-" ? -1.0 : 1.0};

    // Split at the last +/- that is not a leading sign or an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return Complex{0.0, parse_real(body)};
    const double re = parse_real(body.substr(0, split));
    std::string imag = body.substr(split);
    if (imag == "+") imag = "1";
    if (imag == "-") imag = "-1";
    return Complex{re, parse_real(imag)};
}

InnerFunction parse_theta(const std::string& text) {
    int monomial = 0;
    std::string rest = text;

    if (rest.rfind("z^", 0) == 0) {
        const std::size_t star = rest.find('*');
        const std::string power = rest.substr(2, star == std::string::npos ? std::string::npos : star - 2);
        monomial = std::stoi(power);
        if (monomial < 0) throw DomainError("monomial power must be nonnegative");
        rest = (star == std::string::npos) ? std::string{} : rest.substr(star + 1);
    }
    std::vector<Complex> zeros;
    if (!rest.empty()) {
        if (rest.rfind("blaschke:", 0) != 0)
            throw DomainError("theta spec must be z^n, blaschke:a=..., or z^m*blaschke:a=...");
        std::string list = rest.substr(9);
        while (!list.empty()) {
            const std::size_t comma = list.find(',');
            std::string item = list.substr(0, comma);
            list = (comma == std::string::npos) ? std::string{} : list.substr(comma + 1);
            if (item.rfind("a=", 0) != 0) throw DomainError("expected a=<complex> in theta spec");
            zeros.push_back(parse_complex(item.substr(2)));
        }
        if (zeros.empty()) throw DomainError("blaschke spec lists no zeros");
    }
    return InnerFunction(Complex{1.0, 0.0}, monomial, std::move(zeros));
}

std::string format_complex(Complex z, int precision) {
    char buffer[80];
    if (z.imag() == 0.0) {
        std::snprintf(buffer, sizeof buffer, "%.*g", precision, z.real());
        return buffer;
    }
    std::snprintf(buffer, sizeof buffer, "%.*g%+.*gi", precision, z.real(), precision, z.imag());
    return buffer;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json series_to_json(const CoeffSeries& s, int max_coeffs) {
    Json out = Json::array();
    const int n = (max_coeffs < 0) ? s.order() : std::min(s.order(), max_coeffs - 1);
    for (int k = 0; k <= n; ++k) out.push_back(complex_to_json(s[k]));
    return out;
}

Json coords_to_json(const AbCoords& v, int max_tail) {
    Json out;
    out["f0_coeff"] = complex_to_json(v.c0);
    Json tail = Json::array();
    const int n = (max_tail < 0) ? static_cast<int>(v.tail.size())
                                 : std::min<int>(max_tail, static_cast<int>(v.tail.size()));
    for (int k = 0; k < n; ++k) tail.push_back(complex_to_json(v.tail[static_cast<std::size_t>(k)]));
    out["tail"] = std::move(tail);
    out["norm"] = v.norm();
    return out;
}

}  // namespace shiftlab::cli
