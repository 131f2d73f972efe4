#include "rotalg/io.hpp"

#include "rotalg/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rotalg::io {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ParseError(what);
}

double number_field(const nlohmann::json& j, const char* key, const std::string& ctx) {
    require(j.is_object() && j.contains(key), ctx + ": missing \"" + key + "\"");
    const auto& v = j.at(key);
    require(v.is_number(), ctx + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

std::int64_t integer_field(const nlohmann::json& j, const char* key, const std::string& ctx) {
    require(j.is_object() && j.contains(key), ctx + ": missing \"" + key + "\"");
    const auto& v = j.at(key);
    require(v.is_number_integer(), ctx + ": \"" + key + "\" must be an integer");
    return v.get<std::int64_t>();
}

void format_double(std::string& out, double x) {
    if (!std::isfinite(x)) throw DomainError("cannot serialize a non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

void escape_string(std::string& out, const std::string& s) {
    out += '"';
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

void dump_value(std::string& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::null: out += "null"; break;
        case nlohmann::json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
        case nlohmann::json::value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            break;
        case nlohmann::json::value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            break;
        case nlohmann::json::value_t::number_float:
            format_double(out, j.get<double>());
            break;
        case nlohmann::json::value_t::string:
            escape_string(out, j.get<std::string>());
            break;
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_value(out, item, indent + 1);
            }
            out += '\n';
            out += pad;
            out += ']';
            break;
        }
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                escape_string(out, it.key());
                out += ": ";
                dump_value(out, it.value(), indent + 1);
            }
            out += '\n';
            out += pad;
            out += '}';
            break;
        }
        default:
            throw DomainError("unsupported JSON value type");
    }
}

} // namespace

Json to_json(const TorusFunction& fn) {
    Json coeffs = Json::array();
    for (const auto& [k, c] : fn.coeffs()) {
        Json entry;
        entry["k"] = k;
        entry["re"] = c.real();
        entry["im"] = c.imag();
        coeffs.push_back(std::move(entry));
    }
    Json out;
    out["coeffs"] = std::move(coeffs);
    return out;
}

Json to_json(const AlgebraElement& element) {
    Json terms = Json::array();
    for (const auto& [n, fn] : element.terms()) {
        Json entry;
        entry["n"] = n;
        entry["fn"] = to_json(fn);
        terms.push_back(std::move(entry));
    }
    Json meta;
    meta["irrational"] = element.rotation().declared_irrational();
    Json convs = Json::array();
    for (const auto& [p, q] : element.rotation().convergents()) {
        convs.push_back(Json::array({p, q}));
    }
    meta["convergents"] = std::move(convs);

    Json out;
    out["theta"] = element.rotation().value();
    out["sigma"] = element.weight().sigma();
    out["terms"] = std::move(terms);
    out["meta"] = std::move(meta);
    return out;
}

TorusFunction torus_from_json(const nlohmann::json& j) {
    require(j.is_object(), "torus function: expected an object");
    require(j.contains("coeffs") && j.at("coeffs").is_array(),
            "torus function: missing \"coeffs\" array");
    TorusFunction::CoeffMap coeffs;
    std::int64_t prev_k = 0;
    bool first = true;
    for (const auto& entry : j.at("coeffs")) {
        const std::int64_t k = integer_field(entry, "k", "torus function coefficient");
        const double re = number_field(entry, "re", "torus function coefficient");
        const double im = number_field(entry, "im", "torus function coefficient");
        require(first || k > prev_k, "torus function: coefficients must be sorted by k "
                                     "without duplicates");
        first = false;
        prev_k = k;
        coeffs[k] = Complex(re, im);
    }
    return TorusFunction::from_coeffs(std::move(coeffs));
}

AlgebraElement element_from_json(const nlohmann::json& j) {
    require(j.is_object(), "element: expected an object");
    const double theta = number_field(j, "theta", "element");
    const double sigma = number_field(j, "sigma", "element");

    bool irrational = true;
    std::vector<std::pair<long long, long long>> convergents;
    if (j.contains("meta")) {
        const auto& meta = j.at("meta");
        require(meta.is_object(), "element: \"meta\" must be an object");
        if (meta.contains("irrational")) {
            require(meta.at("irrational").is_boolean(),
                    "element: \"irrational\" must be a boolean");
            irrational = meta.at("irrational").get<bool>();
        }
        if (meta.contains("convergents")) {
            const auto& convs = meta.at("convergents");
            require(convs.is_array(), "element: \"convergents\" must be an array");
            for (const auto& pq : convs) {
                require(pq.is_array() && pq.size() == 2 && pq.at(0).is_number_integer() &&
                            pq.at(1).is_number_integer(),
                        "element: each convergent must be an integer pair [p, q]");
                convergents.emplace_back(pq.at(0).get<long long>(), pq.at(1).get<long long>());
            }
        }
    }

    AlgebraElement out(RotationParameter(theta, irrational, std::move(convergents)),
                       Weight(sigma));
    require(j.contains("terms") && j.at("terms").is_array(), "element: missing \"terms\" array");
    std::int64_t prev_n = 0;
    bool first = true;
    for (const auto& entry : j.at("terms")) {
        const std::int64_t n = integer_field(entry, "n", "element term");
        require(n >= INT32_MIN && n <= INT32_MAX, "element term: n out of range");
        require(first || n > prev_n, "element: terms must be sorted by n without duplicates");
        first = false;
        prev_n = n;
        require(entry.contains("fn"), "element term: missing \"fn\"");
        out.add_term(static_cast<int>(n), torus_from_json(entry.at("fn")));
    }
    return out;
}

std::string canonical_dump(const Json& j) {
    std::string out;
    dump_value(out, j, 0);
    out += '\n';
    return out;
}

nlohmann::json parse_text(const std::string& text, const std::string& source) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path);
    out << content;
    if (!out) throw DomainError("short write to " + path);
}

TorusFunction torus_from_file(const std::string& path) {
    return torus_from_json(parse_text(read_text_file(path), path));
}

AlgebraElement element_from_file(const std::string& path) {
    return element_from_json(parse_text(read_text_file(path), path));
}

} // namespace rotalg::io
