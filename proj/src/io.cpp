#include "pdcrystal/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace pdcrystal {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

[[noreturn]] void bad_line(int line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

long long parse_int(const std::string& s, int line_no) {
    std::string t = trim(s);
    if (t.empty()) bad_line(line_no, "expected an integer");
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &pos);
    } catch (const std::exception&) {
        bad_line(line_no, "bad integer '" + t + "'");
    }
    if (pos != t.size()) bad_line(line_no, "trailing characters after integer '" + t + "'");
    return v;
}

struct RawLine {
    int no = 0;
    std::string key, value;
};

struct GridKey {
    bool is_phi = false;
    int s = 0;  // 1-based direction for N grids
    int k = 0;  // eps-degree
};

bool parse_grid_key(const std::string& key, GridKey& out) {
    size_t lb = key.find('[');
    if (lb == std::string::npos || key.back() != ']') return false;
    std::string head = key.substr(0, lb);
    std::string idx = key.substr(lb + 1, key.size() - lb - 2);
    if (idx.empty()) return false;
    for (char ch : idx)
        if (!isdigit(static_cast<unsigned char>(ch))) return false;
    out.k = std::stoi(idx);
    if (head == "phi") {
        out.is_phi = true;
        return true;
    }
    if (head.size() < 2 || head[0] != 'N') return false;
    for (size_t i = 1; i < head.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(head[i]))) return false;
    out.is_phi = false;
    out.s = std::stoi(head.substr(1));
    return true;
}

void fill_grid(SeriesMat& target, const std::string& value, int k, int r, int line_no) {
    std::vector<std::string> rows = split(value, ';');
    if (static_cast<int>(rows.size()) != r)
        bad_line(line_no, "expected " + std::to_string(r) + " rows");
    for (int i = 0; i < r; ++i) {
        std::vector<std::string> entries = split(rows[static_cast<size_t>(i)], ',');
        if (static_cast<int>(entries.size()) != r)
            bad_line(line_no, "expected " + std::to_string(r) + " entries per row");
        for (int j = 0; j < r; ++j) {
            Rational v;
            try {
                v = parse_rational(trim(entries[static_cast<size_t>(j)]));
            } catch (const ParseError& e) {
                bad_line(line_no, e.what());
            }
            target.at(i, j).c[static_cast<size_t>(k)] = v;
        }
    }
}

bool slice_nonzero(const SeriesMat& mat, int k) {
    for (const auto& v : mat.a)
        if (v.c[static_cast<size_t>(k)] != 0) return true;
    return false;
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string format_series_mat_slice(const SeriesMat& mat, int k) {
    std::string s;
    for (int i = 0; i < mat.rows; ++i) {
        if (i) s += " ; ";
        for (int j = 0; j < mat.cols; ++j) {
            if (j) s += ", ";
            s += format_rational(mat.at(i, j).c[static_cast<size_t>(k)]);
        }
    }
    return s;
}

DegreeWindow parse_window(const std::string& text, int d) {
    std::string t = trim(text);
    if (d < 1) throw ParseError("window requires at least one geometric direction");
    std::vector<std::string> parts = split(t, ',');
    if (parts.size() == 1 && parts[0].find(':') == std::string::npos) {
        long long radius = parse_int(parts[0], 0);
        if (radius < 0) throw ParseError("window radius must be >= 0");
        return window_box(d, static_cast<int>(radius));
    }
    if (static_cast<int>(parts.size()) != d)
        throw ParseError("window needs one lo:hi range per direction");
    DegreeWindow w;
    for (const std::string& p : parts) {
        std::vector<std::string> lohi = split(p, ':');
        if (lohi.size() != 2) throw ParseError("window range must be lo:hi");
        int lo = static_cast<int>(parse_int(lohi[0], 0));
        int hi = static_cast<int>(parse_int(lohi[1], 0));
        if (lo > hi) throw ParseError("window range is empty");
        w.lo.push_back(lo);
        w.hi.push_back(hi);
    }
    return w;
}

std::string format_window(const DegreeWindow& w) {
    std::string s;
    for (size_t i = 0; i < w.lo.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(w.lo[i]) + ":" + std::to_string(w.hi[i]);
    }
    return s;
}

DegreeWindow effective_window(const SpecFile& sf) {
    if (sf.window) return *sf.window;
    return window_box(sf.d, 2);
}

SpecFile parse_spec_file(const std::string& text) {
    std::vector<RawLine> lines;
    {
        std::istringstream in(text);
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            size_t eq = line.find('=');
            if (eq == std::string::npos) bad_line(no, "expected 'key = value'");
            RawLine rl;
            rl.no = no;
            rl.key = trim(line.substr(0, eq));
            rl.value = trim(line.substr(eq + 1));
            if (rl.key.empty()) bad_line(no, "empty key");
            lines.push_back(std::move(rl));
        }
    }

    SpecFile sf;
    std::map<std::string, int> seen;  // key -> line
    for (const RawLine& rl : lines) {
        if (seen.count(rl.key)) bad_line(rl.no, "duplicate key '" + rl.key + "'");
        seen[rl.key] = rl.no;
    }

    // scalar fields first; grids need d, r, m
    bool have_flavor = false, have_d = false, have_r = false, have_m = false;
    bool have_beta = false, have_window = false;
    std::string beta_text, window_text;
    int beta_line = 0, window_line = 0;
    for (const RawLine& rl : lines) {
        GridKey gk;
        if (parse_grid_key(rl.key, gk)) continue;
        if (rl.key == "flavor") {
            try {
                sf.kind = flavor_from_name(rl.value);
            } catch (const ParseError& e) {
                bad_line(rl.no, e.what());
            }
            have_flavor = true;
        } else if (rl.key == "d") {
            sf.d = static_cast<int>(parse_int(rl.value, rl.no));
            have_d = true;
        } else if (rl.key == "r") {
            sf.r = static_cast<int>(parse_int(rl.value, rl.no));
            have_r = true;
        } else if (rl.key == "m") {
            sf.m = static_cast<int>(parse_int(rl.value, rl.no));
            have_m = true;
        } else if (rl.key == "a") {
            try {
                sf.a = parse_rational(rl.value);
            } catch (const ParseError& e) {
                bad_line(rl.no, e.what());
            }
        } else if (rl.key == "pi") {
            try {
                sf.pi = parse_rational(rl.value);
            } catch (const ParseError& e) {
                bad_line(rl.no, e.what());
            }
        } else if (rl.key == "beta") {
            have_beta = true;
            beta_text = rl.value;
            beta_line = rl.no;
        } else if (rl.key == "pd_degree") {
            sf.pd_degree = static_cast<int>(parse_int(rl.value, rl.no));
            if (sf.pd_degree < 0) bad_line(rl.no, "pd_degree must be >= 0");
        } else if (rl.key == "window") {
            have_window = true;
            window_text = rl.value;
            window_line = rl.no;
        } else if (rl.key == "prime") {
            try {
                sf.prime = BigInt(rl.value);
            } catch (const std::exception&) {
                bad_line(rl.no, "bad prime '" + rl.value + "'");
            }
            if (sf.prime < 2) bad_line(rl.no, "prime must be >= 2");
        } else if (rl.key == "n_max") {
            sf.n_max = static_cast<int>(parse_int(rl.value, rl.no));
            if (sf.n_max < 0) bad_line(rl.no, "n_max must be >= 0");
        } else if (rl.key == "cutoff") {
            sf.cutoff = parse_int(rl.value, rl.no);
        } else if (rl.key == "seed") {
            try {
                sf.seed = std::stoull(trim(rl.value));
            } catch (const std::exception&) {
                bad_line(rl.no, "bad seed '" + rl.value + "'");
            }
        } else {
            bad_line(rl.no, "unknown key '" + rl.key + "'");
        }
    }

    if (!have_flavor) throw ParseError("missing required key 'flavor'");
    if (!have_d) throw ParseError("missing required key 'd'");
    if (!have_r) throw ParseError("missing required key 'r'");
    if (!have_m) throw ParseError("missing required key 'm'");
    if (sf.r < 1 || sf.m < 1) throw ParseError("r and m must be >= 1");
    if (sf.d < 0) throw ParseError("d must be >= 0");

    bool absolute = flavor_is_absolute(sf.kind);
    if (seen.count("a") && !absolute) bad_line(seen["a"], "key 'a' is for absolute flavors");
    if (absolute && !seen.count("a")) throw ParseError("absolute flavors require key 'a'");
    bool log_kind = (sf.kind == FlavorKind::AbsoluteLog || sf.kind == FlavorKind::RelativeLog);
    if (sf.pi && !log_kind) bad_line(seen["pi"], "key 'pi' is for the log flavors");
    if (log_kind && !sf.pi) throw ParseError("log flavors require key 'pi'");
    if (have_beta && sf.kind != FlavorKind::RelativeSmooth)
        bad_line(beta_line, "key 'beta' is for the relative-smooth flavor");
    if (sf.kind == FlavorKind::RelativeSmooth) {
        if (!have_beta) throw ParseError("relative-smooth requires key 'beta'");
        try {
            sf.beta = parse_series(sf.m, beta_text);
        } catch (const Error& e) {
            bad_line(beta_line, e.what());
        }
    }
    if (have_window) {
        try {
            sf.window = parse_window(window_text, sf.d);
        } catch (const ParseError& e) {
            bad_line(window_line, e.what());
        }
    }

    sf.N.assign(static_cast<size_t>(sf.d), SeriesMat(sf.r, sf.r, TruncatedSeries(sf.m)));
    if (absolute) sf.phi = SeriesMat(sf.r, sf.r, TruncatedSeries(sf.m));
    for (const RawLine& rl : lines) {
        GridKey gk;
        if (!parse_grid_key(rl.key, gk)) continue;
        if (gk.k >= sf.m) bad_line(rl.no, "eps-degree " + std::to_string(gk.k) + " >= m");
        if (gk.is_phi) {
            if (!absolute) bad_line(rl.no, "phi grids are for absolute flavors");
            fill_grid(*sf.phi, rl.value, gk.k, sf.r, rl.no);
        } else {
            if (gk.s < 1 || gk.s > sf.d)
                bad_line(rl.no, "direction " + std::to_string(gk.s) + " out of range");
            fill_grid(sf.N[static_cast<size_t>(gk.s - 1)], rl.value, gk.k, sf.r, rl.no);
        }
    }
    return sf;
}

SpecFile load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_file(buf.str());
}

std::string serialize_spec_file(const SpecFile& sf) {
    std::ostringstream out;
    out << "flavor = " << flavor_name(sf.kind) << "\n";
    out << "d = " << sf.d << "\n";
    out << "r = " << sf.r << "\n";
    out << "m = " << sf.m << "\n";
    if (flavor_is_absolute(sf.kind)) out << "a = " << format_rational(sf.a) << "\n";
    if (sf.pi) out << "pi = " << format_rational(*sf.pi) << "\n";
    if (sf.beta) out << "beta = " << format_series(*sf.beta) << "\n";
    for (int s = 0; s < sf.d; ++s)
        for (int k = 0; k < sf.m; ++k)
            if (slice_nonzero(sf.N[static_cast<size_t>(s)], k))
                out << "N" << (s + 1) << "[" << k
                    << "] = " << format_series_mat_slice(sf.N[static_cast<size_t>(s)], k) << "\n";
    if (sf.phi)
        for (int k = 0; k < sf.m; ++k)
            if (slice_nonzero(*sf.phi, k))
                out << "phi[" << k << "] = " << format_series_mat_slice(*sf.phi, k) << "\n";
    out << "pd_degree = " << sf.pd_degree << "\n";
    if (sf.window) out << "window = " << format_window(*sf.window) << "\n";
    out << "prime = " << sf.prime.str() << "\n";
    out << "n_max = " << sf.n_max << "\n";
    out << "cutoff = " << sf.cutoff << "\n";
    out << "seed = " << sf.seed << "\n";
    return out.str();
}

CrystalSpec to_crystal_spec(const SpecFile& sf) {
    Flavor fl;
    switch (sf.kind) {
        case FlavorKind::RelativeSmooth: fl = relative_smooth(sf.d, *sf.beta); break;
        case FlavorKind::RelativeLog: fl = relative_log(sf.d, sf.m); break;
        case FlavorKind::AbsoluteSmooth: fl = absolute_smooth(sf.d, sf.a); break;
        case FlavorKind::AbsoluteLog: fl = absolute_log(sf.d, sf.a); break;
        case FlavorKind::ArithmeticPoint: fl = arithmetic_point(sf.a); break;
    }
    return make_crystal_spec(fl, sf.r, sf.m, flavor_is_absolute(sf.kind) ? sf.a : Rational(0),
                             sf.N, sf.phi);
}

GroupElementData parse_group_element(const std::string& text, int d, int m) {
    GroupElementData g = identity_element(d, m);
    std::istringstream in(text);
    std::string line;
    int no = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, line)) {
        ++no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) bad_line(no, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (seen.count(key)) bad_line(no, "duplicate key '" + key + "'");
        seen[key] = no;
        if (key == "n") {
            std::vector<std::string> parts = value.empty() ? std::vector<std::string>{}
                                                           : split(value, ',');
            if (static_cast<int>(parts.size()) != d)
                bad_line(no, "expected " + std::to_string(d) + " integers");
            for (int s = 0; s < d; ++s)
                g.nvec[static_cast<size_t>(s)] =
                    static_cast<int>(parse_int(parts[static_cast<size_t>(s)], no));
        } else if (key == "gE_over_E" || key == "t_over_E") {
            TruncatedSeries u(m);
            try {
                u = parse_series(m, value);
            } catch (const Error& e) {
                bad_line(no, e.what());
            }
            (key == "gE_over_E" ? g.gE_over_E : g.t_over_E) = u;
        } else {
            bad_line(no, "unknown key '" + key + "'");
        }
    }
    return g;
}

GroupElementData load_group_element(const std::string& path, int d, int m) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open group-element file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_group_element(buf.str(), d, m);
}

int combine_exit_code(const std::vector<CheckResult>& results) {
    bool any_inconclusive = false;
    for (const CheckResult& c : results) {
        if (c.status == CheckStatus::Fail) return 1;
        if (c.status == CheckStatus::Inconclusive) any_inconclusive = true;
    }
    return any_inconclusive ? 2 : 0;
}

std::string render_report_text(const ReportFile& rep) {
    std::ostringstream out;
    out << "command: " << rep.command << "\n";
    for (const CheckResult& c : rep.results) {
        out << "[" << status_name(c.status) << "] " << c.name;
        if (!c.witness.empty()) out << " -- " << c.witness;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f", c.ms);
        out << " (" << buf << " ms)\n";
    }
    for (const std::string& n : rep.notes) out << "note: " << n << "\n";
    out << "exit: " << rep.exit_code << "\n";
    return out.str();
}

std::string render_report_machine(const ReportFile& rep) {
    nlohmann::json j;
    j["command"] = rep.command;
    j["exit_code"] = rep.exit_code;
    j["generated_at"] = iso_timestamp();
    j["results"] = nlohmann::json::array();
    for (const CheckResult& c : rep.results) {
        nlohmann::json e;
        e["name"] = c.name;
        e["status"] = status_name(c.status);
        e["witness"] = c.witness;
        j["results"].push_back(std::move(e));
    }
    j["notes"] = rep.notes;
    return j.dump(2) + "\n";
}

}  // namespace pdcrystal
