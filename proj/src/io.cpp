#include "elastica/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace elastica::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path, 0);
    return in;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_body_csv(const std::string& path, const geom::ConvexBody& body) {
    std::ofstream out = open_out(path);
    for (const geom::Point& p : body.vertices) {
        out << fmt17(p.x()) << ',' << fmt17(p.y()) << '\n';
    }
}

void write_body_json(const std::string& path, const geom::ConvexBody& body) {
    nlohmann::json arr = nlohmann::json::array();
    for (const geom::Point& p : body.vertices) {
        arr.push_back({p.x(), p.y()});
    }
    open_out(path) << arr.dump() << '\n';
}

geom::ConvexBody read_body_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    geom::ConvexBody body;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // tolerate blank trailing lines and CR line endings
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        double x, y;
        char comma = 0;
        if (!(ss >> x >> comma >> y) || comma != ',') {
            throw ParseError("malformed CSV body line", lineno);
        }
        std::string rest;
        if (ss >> rest) throw ParseError("trailing characters on CSV body line", lineno);
        body.vertices.emplace_back(x, y);
    }
    if (body.vertices.size() < 3) {
        throw ParseError("body needs at least 3 vertices", lineno);
    }
    return body;
}

geom::ConvexBody read_body_json(const std::string& path) {
    std::ifstream in = open_in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON body: ") + e.what(), 0);
    }
    if (!j.is_array() || j.size() < 3) {
        throw ParseError("JSON body must be an array of at least 3 [x, y] pairs", 0);
    }
    geom::ConvexBody body;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
            throw ParseError("JSON body entry is not an [x, y] pair", long(i) + 1);
        }
        body.vertices.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return body;
}

geom::ConvexBody read_body_auto(const std::string& path) {
    if (ends_with(path, ".json")) return read_body_json(path);
    return read_body_csv(path);
}

void write_domain_svg(const std::string& path, const arc::OptimalDomain& domain) {
    const geom::ConvexBody& body = domain.body;
    geom::Point lo = body.vertices.front(), hi = lo;
    for (const geom::Point& p : body.vertices) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double margin = 0.15 * (hi - lo).norm();
    lo.array() -= margin;
    hi.array() += margin;
    const double w = hi.x() - lo.x(), h = hi.y() - lo.y();
    const double px = 640.0;
    const double scale = px / w;

    auto X = [&](double x) { return (x - lo.x()) * scale; };
    auto Y = [&](double y) { return (hi.y() - y) * scale; };  // flip to screen coords

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt9(px)
        << "\" height=\"" << fmt9(h * scale) << "\" viewBox=\"0 0 " << fmt9(px) << ' '
        << fmt9(h * scale) << "\">\n";
    out << "  <circle cx=\"" << fmt9(X(0)) << "\" cy=\"" << fmt9(Y(0)) << "\" r=\""
        << fmt9(scale) << "\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    out << "  <path d=\"M";
    for (std::size_t i = 0; i < body.vertices.size(); ++i) {
        const geom::Point& p = body.vertices[i];
        out << (i ? " L" : " ") << fmt9(X(p.x())) << ' ' << fmt9(Y(p.y()));
    }
    out << " Z\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>\n";
    const double hh = domain.segment_half_length;
    for (const geom::Point& c : {geom::Point(hh, 1.0), geom::Point(-hh, 1.0),
                                 geom::Point(hh, -1.0), geom::Point(-hh, -1.0)}) {
        out << "  <circle cx=\"" << fmt9(X(c.x())) << "\" cy=\"" << fmt9(Y(c.y()))
            << "\" r=\"4\" fill=\"#c23\"/>\n";
    }
    out << "</svg>\n";
}

std::string functionals_json(const geom::FunctionalsReport& f) {
    std::ostringstream out;
    out << "{\"E\":" << fmt9(f.E) << ",\"P\":" << fmt9(f.P) << ",\"A\":" << fmt9(f.A)
        << ",\"D\":" << fmt9(f.D) << ",\"R\":" << fmt9(f.R) << ",\"r\":" << fmt9(f.r)
        << ",\"products\":{\"EP\":" << fmt9(f.EP) << ",\"E2A\":" << fmt9(f.E2A)
        << ",\"ED\":" << fmt9(f.ED) << ",\"ER\":" << fmt9(f.ER) << ",\"Er\":" << fmt9(f.Er)
        << "}}";
    return out.str();
}

std::string inequality_json(const analysis::InequalityReport& rep) {
    std::ostringstream out;
    out << "{\"functionals\":" << functionals_json(rep.functionals) << ",\"inequalities\":[";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const analysis::InequalityRow& r = rep.rows[i];
        out << (i ? "," : "") << "{\"name\":\"" << r.name << "\",\"product\":" << fmt9(r.product)
            << ",\"bound\":" << fmt9(r.bound) << ",\"deficit\":" << fmt9(r.deficit)
            << ",\"pass\":" << (r.pass ? "true" : "false")
            << ",\"equality\":" << (r.equality ? "true" : "false") << "}";
    }
    out << "],\"max_turning_angle\":" << fmt9(rep.max_turning)
        << ",\"all_pass\":" << (rep.all_pass ? "true" : "false") << "}";
    return out.str();
}

std::string solution_json(const solver::ElasticaSolution& sol, bool with_theta) {
    std::ostringstream out;
    out << "{\"alpha\":" << fmt9(sol.alpha) << ",\"L\":" << fmt9(sol.L)
        << ",\"energy\":" << fmt9(sol.energy) << ",\"residuals\":[" << fmt9(sol.r_cos) << ','
        << fmt9(sol.r_sin) << "],\"multipliers\":[" << fmt9(sol.multiplier_fit[0]) << ','
        << fmt9(sol.multiplier_fit[1]) << ',' << fmt9(sol.multiplier_fit[2])
        << "],\"kkt_residual\":" << fmt9(sol.kkt)
        << ",\"converged\":" << (sol.converged ? "true" : "false");
    if (with_theta) {
        out << ",\"theta\":[";
        for (Eigen::Index i = 0; i < sol.theta.size(); ++i) {
            out << (i ? "," : "") << fmt9(sol.theta[i]);
        }
        out << "]";
    }
    out << "}";
    return out.str();
}

std::string ealpha_csv(const std::vector<analysis::EAlphaRow>& rows) {
    std::ostringstream out;
    out << "alpha,E,Eprime_analytic,Eprime_fd,Esecond,h,R\n";
    for (const analysis::EAlphaRow& r : rows) {
        out << fmt9(r.alpha) << ',' << fmt9(r.E) << ',' << fmt9(r.Ep_analytic) << ','
            << fmt9(r.Ep_fd) << ',' << fmt9(r.Esecond) << ',' << fmt9(r.h) << ','
            << fmt9(r.R) << '\n';
    }
    return out.str();
}

}  // namespace elastica::io
