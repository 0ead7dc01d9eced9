#include "feedin/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "feedin/error.hpp"

namespace feedin {

namespace {

constexpr std::array<std::string_view, 8> kSweepParams = {"lambda", "omega", "omega_C", "F", "C", "sigma", "T", "P"};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line, std::string_view key, const std::string& what) {
    std::ostringstream msg;
    if (line > 0) {
        msg << "line " << line << ": ";
    }
    if (!key.empty()) {
        msg << "'" << key << "': ";
    }
    msg << what;
    fail(ErrorKind::ParseError, msg.str());
}

double to_number(std::string_view text, int line, std::string_view key) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        parse_fail(line, key, "expected a finite number, got '" + std::string(text) + "'");
    }
    return v;
}

bool to_bool(std::string_view text, int line, std::string_view key) {
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    parse_fail(line, key, "expected true or false, got '" + std::string(text) + "'");
}

SweepSpec& sweep_of(Scenario& s) {
    if (!s.sweep) {
        s.sweep = SweepSpec{};
    }
    return *s.sweep;
}

void apply(Scenario& s, std::string_view key, std::string_view value, int line) {
    auto num = [&] { return to_number(value, line, key); };
    if (key == "r") {
        s.market.r = num();
    } else if (key == "mu") {
        s.market.mu = num();
    } else if (key == "sigma") {
        s.market.sigma = num();
    } else if (key == "I") {
        s.project.I = num();
    } else if (key == "Q") {
        s.project.Q = num();
    } else if (key == "F") {
        s.F = num();
    } else if (key == "C") {
        s.C = num();
    } else if (key == "T") {
        s.T = num();
    } else if (key == "P") {
        s.P = num();
    } else if (key == "lambda") {
        s.regulatory.lambda = num();
    } else if (key == "omega") {
        s.regulatory.omega = num();
    } else if (key == "omega_C") {
        s.regulatory.omega_C = num();
    } else if (key == "scheme") {
        try {
            s.scheme = parse_scheme_kind(value);
        } catch (const Error& e) {
            parse_fail(line, key, e.what());
        }
    } else if (key == "ru") {
        s.ru = to_bool(value, line, key);
    } else if (key == "sweep_param") {
        sweep_of(s).param = std::string(value);
    } else if (key == "sweep_lo") {
        sweep_of(s).lo = num();
    } else if (key == "sweep_hi") {
        sweep_of(s).hi = num();
    } else if (key == "sweep_n") {
        const double n = num();
        if (n != std::floor(n) || n < 0 || n > 1e6) {
            parse_fail(line, key, "expected a whole number of points");
        }
        sweep_of(s).n_points = static_cast<int>(n);
    } else {
        parse_fail(line, key, "unknown key");
    }
}

Scenario parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
        const int line = 1 + static_cast<int>(std::count(upto.begin(), upto.end(), '\n'));
        parse_fail(line, {}, e.what());
    }
    if (!doc.is_object()) {
        parse_fail(1, {}, "expected a flat JSON object");
    }
    Scenario s;
    for (const auto& [key, value] : doc.items()) {
        if (value.is_object() || value.is_array() || value.is_null()) {
            parse_fail(0, key, "expected a scalar value");
        }
        const std::string v = value.is_string() ? value.get<std::string>() : value.dump();
        apply(s, key, v, 0);
    }
    return s;
}

Scenario parse_lines(std::string_view text) {
    Scenario s;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            parse_fail(line_no, {}, "expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty() || value.empty()) {
            parse_fail(line_no, key, "empty key or value");
        }
        apply(s, key, value, line_no);
    }
    return s;
}

std::string shortest(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace

bool is_sweep_parameter(std::string_view name) noexcept {
    return std::find(kSweepParams.begin(), kSweepParams.end(), name) != kSweepParams.end();
}

void set_parameter(Scenario& s, std::string_view name, double value) {
    if (name == "lambda") {
        s.regulatory.lambda = value;
    } else if (name == "omega") {
        s.regulatory.omega = value;
    } else if (name == "omega_C") {
        s.regulatory.omega_C = value;
    } else if (name == "F") {
        s.F = value;
    } else if (name == "C") {
        s.C = value;
    } else if (name == "sigma") {
        s.market.sigma = value;
    } else if (name == "T") {
        s.T = value;
    } else if (name == "P") {
        s.P = value;
    } else {
        fail(ErrorKind::ValidationError, "unknown sweep parameter '" + std::string(name) + "'");
    }
}

void validate(const Scenario& s) {
    std::vector<std::string> problems;
    auto check = [&](const std::function<void()>& f) {
        try {
            f();
        } catch (const Error& e) {
            problems.emplace_back(e.what());
        }
    };
    check([&] { validate(s.market); });
    check([&] { validate(s.project); });
    check([&] { validate(s.regulatory); });
    if (!(s.F >= 0.0)) {
        problems.emplace_back("F must be non-negative");
    }
    if (!(s.T >= 0.0)) {
        problems.emplace_back("T must be non-negative");
    }
    if (!(s.C >= s.F)) {
        problems.emplace_back("cap C must not be below the floor F");
    }
    if (!(s.P > 0.0)) {
        problems.emplace_back("P must be positive");
    }
    if (s.sweep) {
        const auto& sw = *s.sweep;
        if (!is_sweep_parameter(sw.param)) {
            problems.emplace_back("sweep_param must be one of lambda, omega, omega_C, F, C, sigma, T, P");
        }
        if (!(sw.lo < sw.hi)) {
            problems.emplace_back("sweep_lo must be below sweep_hi");
        }
        if (sw.n_points < 2) {
            problems.emplace_back("sweep_n must be at least 2");
        }
    }
    if (!problems.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& p : problems) {
            msg += "\n  - " + p;
        }
        fail(ErrorKind::ValidationError, msg);
    }
}

Scenario parse_scenario(std::string_view text) {
    const auto body = trim(text);
    Scenario s = !body.empty() && body.front() == '{' ? parse_json(text) : parse_lines(text);
    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::InvalidConfig, "cannot open scenario file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string format_scenario(const Scenario& s) {
    std::ostringstream out;
    auto put = [&out](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
    put("scheme", std::string(label(s.scheme)));
    put("ru", s.ru ? "true" : "false");
    put("r", shortest(s.market.r));
    put("mu", shortest(s.market.mu));
    put("sigma", shortest(s.market.sigma));
    put("I", shortest(s.project.I));
    put("Q", shortest(s.project.Q));
    put("F", shortest(s.F));
    put("C", shortest(s.C));
    put("T", shortest(s.T));
    put("P", shortest(s.P));
    put("lambda", shortest(s.regulatory.lambda));
    put("omega", shortest(s.regulatory.omega));
    put("omega_C", shortest(s.regulatory.omega_C));
    if (s.sweep) {
        put("sweep_param", s.sweep->param);
        put("sweep_lo", shortest(s.sweep->lo));
        put("sweep_hi", shortest(s.sweep->hi));
        put("sweep_n", std::to_string(s.sweep->n_points));
    }
    return out.str();
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorKind::InvalidConfig, "cannot write scenario file " + path.string());
    }
    out << format_scenario(scenario);
}

}  // namespace feedin
