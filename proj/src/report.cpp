#include "mwci/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mwci {

namespace {

using nlohmann::json;

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

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    for (const auto& tok : split(s, ','))
        if (!trim(tok).empty()) out.push_back(std::stoll(trim(tok)));
    return out;
}

std::pair<Int, std::vector<Int>> parse_one_bweight(const std::string& tok) {
    // "1/r(e1,e2,e3)"
    auto slash = tok.find('/');
    auto open = tok.find('(');
    auto close = tok.find(')');
    if (slash == std::string::npos || open == std::string::npos || close == std::string::npos)
        throw std::invalid_argument("bad blow-up weight: " + tok);
    Int r = std::stoll(tok.substr(slash + 1, open - slash - 1));
    auto ws = parse_int_list(tok.substr(open + 1, close - open - 1));
    std::sort(ws.begin(), ws.end());
    return {r, ws};
}

}  // namespace

std::vector<CenterPlan> parse_bweights(const std::string& text) {
    std::vector<CenterPlan> out;
    std::istringstream is(text);
    std::string tok;
    bool second_next = false;
    while (is >> tok) {
        if (tok == "/") {
            second_next = true;
            continue;
        }
        auto [r, ws] = parse_one_bweight(tok);
        if (second_next) {
            if (out.empty()) throw std::invalid_argument("second-level weight without a first");
            out.back().second_r = r;
            out.back().second_weights = ws;
            second_next = false;
        } else {
            out.push_back({r, ws, {}, {}});
        }
    }
    if (second_next) throw std::invalid_argument("dangling second-level separator");
    return out;
}

std::string format_bweights(const PipelineResult& res) {
    std::ostringstream os;
    bool first = true;
    for (const auto& step : res.plan.steps) {
        if (!first) os << (step.level > 1 ? " / " : " ");
        first = false;
        os << "1/" << step.weight.r << "(";
        for (size_t i = 0; i < step.weight.residues.size(); ++i)
            os << (i ? "," : "") << step.weight.residues[i];
        os << ")";
    }
    return os.str();
}

std::string report_to_json(const PipelineResult& res) {
    json j;
    j["family"] = {{"weights", res.family.space.weights}, {"degrees", res.family.degrees}};
    j["id"] = res.family.id();
    j["accepted"] = res.accepted;
    if (!res.accepted) {
        j["failure_step"] = res.failure_step;
        return j.dump();
    }
    j["alpha"] = res.alpha;
    json steps = json::array();
    for (const auto& s : res.plan.steps)
        steps.push_back({{"r", s.weight.r}, {"weights", s.weight.residues}, {"level", s.level}});
    j["plan"] = steps;
    j["bweights"] = format_bweights(res);
    json cert;
    cert["criterion"] = criterion_name(res.certificate.kind);
    if (res.certificate.k_coordinate >= 0) cert["k_coordinate"] = res.certificate.k_coordinate;
    cert["irreducibility"] = res.certificate.irreducibility_tag;
    json conds = json::array();
    for (const auto& c : res.certificate.conditions) {
        json jc;
        jc["id"] = c.id;
        jc["verdict"] = c.pass ? "pass" : "fail";
        if (c.numeric) {
            jc["lhs"] = rat_to_string(c.lhs);
            jc["rhs"] = rat_to_string(c.rhs);
            jc["slack"] = rat_to_string(c.slack);
        }
        conds.push_back(jc);
    }
    cert["conditions"] = conds;
    j["certificate"] = cert;
    j["vol"] = rat_to_string(res.vol);
    j["p_g"] = res.p_g.str();
    j["P2"] = res.p2.str();
    if (res.p2_sections) j["P2_sections"] = res.p2_sections->str();
    if (res.p2_reid) j["P2_reid"] = res.p2_reid->str();
    j["chi"] = res.chi.str();
    if (res.rho) j["rho"] = *res.rho;
    j["rho_source"] = res.rho_source;
    j["basket"] = basket_to_string(res.basket);
    j["basket_source"] = res.basket_source;
    j["has_non_isolated_canonical"] = res.has_non_isolated_canonical;
    if (res.delta) j["delta"] = rat_to_string(*res.delta);
    j["noether_line"] = noether_tag_name(res.noether);
    j["kodaira_tag"] = res.kodaira_tag;
    return j.dump();
}

CandidateInput candidate_from_json_text(const std::string& text) {
    json j = json::parse(text);
    CandidateInput in;
    in.family.space.weights = j.at("weights").get<std::vector<Int>>();
    in.family.degrees = j.at("degrees").get<std::vector<Int>>();
    if (j.contains("plan")) {
        if (j["plan"].is_string()) {
            in.plan = parse_bweights(j["plan"].get<std::string>());
        } else {
            std::vector<CenterPlan> plan;
            for (const auto& s : j["plan"]) {
                CenterPlan cp;
                cp.r = s.at("r").get<Int>();
                cp.weights = s.at("weights").get<std::vector<Int>>();
                std::sort(cp.weights.begin(), cp.weights.end());
                if (s.contains("second_r")) {
                    cp.second_r = s["second_r"].get<Int>();
                    auto sw = s.at("second_weights").get<std::vector<Int>>();
                    std::sort(sw.begin(), sw.end());
                    cp.second_weights = sw;
                }
                plan.push_back(std::move(cp));
            }
            in.plan = std::move(plan);
        }
    }
    if (j.contains("annotation")) {
        Annotation ann;
        const auto& ja = j["annotation"];
        if (ja.contains("basket") && !ja["basket"].is_null()) {
            Basket b;
            for (const auto& e : ja["basket"])
                b.push_back({e.at(0).get<Int>(), e.at(1).get<Int>(), e.at(2).get<Int>()});
            ann.basket = b;
        }
        if (ja.contains("rho") && !ja["rho"].is_null()) ann.rho = ja["rho"].get<Int>();
        in.annotation = ann;
    }
    return in;
}

std::map<std::string, Annotation> load_annotations(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open " + file.string());
    json j = json::parse(is);
    std::map<std::string, Annotation> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        Annotation ann;
        const auto& v = it.value();
        if (v.contains("basket") && !v["basket"].is_null()) {
            Basket b;
            for (const auto& e : v["basket"])
                b.push_back({e.at(0).get<Int>(), e.at(1).get<Int>(), e.at(2).get<Int>()});
            std::sort(b.begin(), b.end(), [](const BasketEntry& x, const BasketEntry& y) {
                return std::tie(x.r, x.b) < std::tie(y.r, y.b);
            });
            ann.basket = b;
        }
        if (v.contains("rho") && !v["rho"].is_null()) ann.rho = v["rho"].get<Int>();
        out[it.key()] = ann;
    }
    return out;
}

std::vector<GoldenRow> load_golden_table(const std::filesystem::path& file, int table_id) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open " + file.string());
    std::vector<GoldenRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        auto f = split(line, ';');
        GoldenRow row;
        row.table = table_id;
        row.no = std::stoi(f.at(0));
        row.alpha = std::stoll(f.at(1));
        row.degrees = parse_int_list(f.at(2));
        row.weights = parse_int_list(f.at(3));
        row.bweights = trim(f.at(4));
        row.vol = rat_from_string(trim(f.at(5)));
        row.p2 = BigInt(trim(f.at(6)));
        if (table_id <= 2) {
            row.chi = BigInt(trim(f.at(7)));
            if (table_id == 1) {
                row.rho_column = true;
                row.rho = std::stoll(trim(f.at(8)));
                row.basket = parse_basket(trim(f.at(9)));
            } else {
                row.basket = parse_basket(trim(f.at(8)));
            }
        } else {
            row.pg = BigInt(trim(f.at(7)));
            row.rho_column = true;
            if (!trim(f.at(8)).empty()) row.rho = std::stoll(trim(f.at(8)));
            row.basket = parse_basket(trim(f.at(9)));
            row.delta = rat_from_string(trim(f.at(10)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<GoldenKod2Row> load_golden_table5(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open " + file.string());
    std::vector<GoldenKod2Row> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        auto f = split(line, ';');
        GoldenKod2Row row;
        row.no = std::stoi(f.at(0));
        row.a = std::stoll(f.at(1));
        row.b = std::stoll(f.at(2));
        row.w3 = std::stoll(f.at(3));
        row.rmin = std::stoll(f.at(4));
        for (auto clause : split(f.at(5), '&')) {
            clause = trim(clause);
            // "mod(r,M) in {a,b}", "mod(r,M) = v", "mod(r,M) != v"
            auto comma = clause.find(',');
            auto close = clause.find(')');
            Int m = std::stoll(clause.substr(comma + 1, close - comma - 1));
            std::vector<Int> allowed;
            if (clause.find("in {") != std::string::npos) {
                auto lb = clause.find('{'), rb = clause.find('}');
                allowed = parse_int_list(clause.substr(lb + 1, rb - lb - 1));
            } else if (clause.find("!=") != std::string::npos) {
                Int v = std::stoll(trim(clause.substr(clause.find("!=") + 2)));
                for (Int x = 0; x < m; ++x)
                    if (x != v) allowed.push_back(x);
            } else {
                Int v = std::stoll(trim(clause.substr(clause.find('=') + 1)));
                allowed.push_back(v);
            }
            std::sort(allowed.begin(), allowed.end());
            row.allowed[m] = allowed;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

PipelineResult run_golden_row(const GoldenRow& row,
                              const std::map<std::string, Annotation>& annotations) {
    CandidateInput in;
    in.family = {WeightedSpace{row.weights}, row.degrees};
    in.plan = parse_bweights(row.bweights);
    auto it = annotations.find(in.family.id());
    if (it != annotations.end()) in.annotation = it->second;
    return verify_candidate(in);
}

namespace {

void diff_field(std::vector<GoldenDiff>& diffs, const GoldenRow& row, const std::string& field,
                const std::string& expected, const std::string& actual) {
    if (expected != actual) diffs.push_back({row.table, row.no, field, expected, actual});
}

void compare_row(std::vector<GoldenDiff>& diffs, const GoldenRow& row,
                 const std::map<std::string, Annotation>& annotations) {
    auto res = run_golden_row(row, annotations);
    if (!res.accepted) {
        diffs.push_back({row.table, row.no, "accepted", "yes", res.failure_step});
        return;
    }
    diff_field(diffs, row, "alpha", std::to_string(row.alpha), std::to_string(res.alpha));
    diff_field(diffs, row, "vol", rat_to_string(row.vol), rat_to_string(res.vol));
    diff_field(diffs, row, "P2", row.p2.str(), res.p2.str());
    if (row.chi) diff_field(diffs, row, "chi", row.chi->str(), res.chi.str());
    if (row.pg) diff_field(diffs, row, "pg", row.pg->str(), res.p_g.str());
    if (row.rho) {
        diff_field(diffs, row, "rho", std::to_string(*row.rho),
                   res.rho ? std::to_string(*res.rho) : "absent");
    }
    diff_field(diffs, row, "basket", basket_to_string(row.basket), basket_to_string(res.basket));
    if (row.delta)
        diff_field(diffs, row, "delta", rat_to_string(*row.delta),
                   res.delta ? rat_to_string(*res.delta) : "absent");
    if (row.table == 2 && !res.has_non_isolated_canonical)
        diffs.push_back({row.table, row.no, "non-isolated-flag", "true", "false"});
}

}  // namespace

std::vector<GoldenDiff> golden_compare(const std::filesystem::path& dir) {
    std::vector<GoldenDiff> diffs;
    auto annotations = load_annotations(dir / "annotations.json");
    for (int t = 1; t <= 4; ++t) {
        auto rows = load_golden_table(dir / ("table" + std::to_string(t) + ".csv"), t);
        for (const auto& row : rows) compare_row(diffs, row, annotations);
    }
    for (const auto& row : load_golden_table5(dir / "table5.csv")) {
        auto cond = generate_kodaira2_family(row.a, row.b, row.w3, 60);
        GoldenRow pseudo;
        pseudo.table = 5;
        pseudo.no = row.no;
        if (cond.rmin != row.rmin)
            diffs.push_back({5, row.no, "rmin", std::to_string(row.rmin),
                             std::to_string(cond.rmin)});
        auto render = [](const std::map<Int, std::vector<Int>>& m) {
            std::ostringstream os;
            for (const auto& [mod, allowed] : m) {
                os << "mod" << mod << ":{";
                for (size_t i = 0; i < allowed.size(); ++i) os << (i ? "," : "") << allowed[i];
                os << "} ";
            }
            return os.str();
        };
        if (cond.allowed != row.allowed)
            diffs.push_back({5, row.no, "conditions", render(row.allowed), render(cond.allowed)});
        if (!cond.characterized)
            diffs.push_back({5, row.no, "characterized", "true", "false"});
        for (Int r : cond.survivors)
            if (kodaira2_identity(row.a, row.b, r) != 0)
                diffs.push_back({5, row.no, "identity", "0", "nonzero at r=" + std::to_string(r)});
    }
    return diffs;
}

namespace {

std::string row_cells(const PipelineResult& r, char sep) {
    std::ostringstream os;
    auto list = [&](const std::vector<Int>& v) {
        std::ostringstream o2;
        for (size_t i = 0; i < v.size(); ++i) o2 << (i ? "," : "") << v[i];
        return o2.str();
    };
    os << r.alpha << sep << list(r.family.degrees) << sep << list(r.family.space.weights) << sep
       << format_bweights(r) << sep << rat_to_string(r.vol) << sep << r.p2.str() << sep
       << r.p_g.str() << sep << r.chi.str() << sep << (r.rho ? std::to_string(*r.rho) : "") << sep
       << basket_to_string(r.basket) << sep << (r.delta ? rat_to_string(*r.delta) : "") << sep
       << r.kodaira_tag;
    return os.str();
}

}  // namespace

std::string render_csv_table(const std::vector<PipelineResult>& rows) {
    std::ostringstream os;
    os << "no;alpha;degrees;weights;bweights;vol;P2;pg;chi;rho;basket;delta;kind\n";
    for (size_t i = 0; i < rows.size(); ++i)
        os << (i + 1) << ";" << row_cells(rows[i], ';') << "\n";
    return os.str();
}

std::string render_markdown_table(const std::vector<PipelineResult>& rows) {
    std::ostringstream os;
    os << "| no | alpha | deg | weight | B-weight | Vol | P2 | p_g | chi | rho | basket | Delta "
          "|\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        auto list = [&](const std::vector<Int>& v) {
            std::ostringstream o2;
            for (size_t j = 0; j < v.size(); ++j) o2 << (j ? "," : "") << v[j];
            return o2.str();
        };
        os << "| " << (i + 1) << " | " << r.alpha << " | (" << list(r.family.degrees) << ") | ("
           << list(r.family.space.weights) << ") | " << format_bweights(r) << " | "
           << rat_to_string(r.vol) << " | " << r.p2.str() << " | " << r.p_g.str() << " | "
           << r.chi.str() << " | " << (r.rho ? std::to_string(*r.rho) : " ") << " | "
           << basket_to_string(r.basket) << " | " << (r.delta ? rat_to_string(*r.delta) : " ")
           << " |\n";
    }
    return os.str();
}

}  // namespace mwci
