#include "skt/io.hpp"

#include "skt/error.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace skt {

namespace {

using nlohmann::json;

Eigen::MatrixXd to_matrix(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
      throw ParseError(what + ": expected a square matrix");
    for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

json from_matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

HermitianStructure read_structure(std::istream& is) {
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("structure: ") + e.what());
  }
  try {
    const json& factors = doc.at("factors");
    if (!factors.is_array() || factors.empty()) throw ParseError("structure: 'factors' must be a nonempty array");

    std::vector<std::pair<SimpleType, Normalization>> spec;
    std::vector<double> z;
    for (const json& f : factors) {
      const std::string family = f.at("family").get<std::string>();
      if (family.size() != 1) throw ParseError("structure: family must be a single letter, got '" + family + "'");
      const SimpleType type = make_type(family[0], f.at("rank").get<int>());
      const Normalization norm = parse_normalization(f.value("normalization", std::string("long2")));
      spec.emplace_back(type, norm);
      z.push_back(f.value("z", 1.0));
    }
    auto gs = GroupSpec::make(spec);

    FiberMetric fiber{std::vector<double>(static_cast<std::size_t>(gs->num_positive()), 1.0)};
    for (int fi = 0; fi < gs->num_factors(); ++fi) {
      const json& f = factors[static_cast<std::size_t>(fi)];
      if (!f.contains("x")) continue;
      const auto x = f.at("x").get<std::vector<double>>();
      const RootSystem& rs = gs->roots(fi);
      if (static_cast<int>(x.size()) != rs.num_positive())
        throw ParseError("structure: factor " + rs.type().name() + " needs " + std::to_string(rs.num_positive()) +
                         " x values (one per positive root), got " + std::to_string(x.size()));
      for (int a = 0; a < rs.num_positive(); ++a)
        fiber.x[static_cast<std::size_t>(gs->global(fi, a))] = x[static_cast<std::size_t>(a)];
    }

    TorusMetric torus = TorusMetric::killing(*gs, z);
    if (doc.contains("torus") && !(doc["torus"].is_string() && doc["torus"] == "killing")) {
      const json& t = doc["torus"];
      if (t.is_object() && t.contains("blocks")) {
        const json& blocks = t["blocks"];
        if (!blocks.is_array() || static_cast<int>(blocks.size()) != gs->num_factors())
          throw ParseError("structure: torus.blocks needs one block per factor");
        torus.matrix.setZero();
        for (int fi = 0; fi < gs->num_factors(); ++fi) {
          const auto [off, n] = gs->torus_block(fi);
          const Eigen::MatrixXd b = to_matrix(blocks[static_cast<std::size_t>(fi)], "torus block");
          if (b.rows() != n) throw ParseError("structure: torus block " + std::to_string(fi) + " has wrong size");
          torus.matrix.block(off, off, n, n) = b;
        }
      } else if (t.is_object() && t.contains("matrix")) {
        torus.matrix = to_matrix(t["matrix"], "torus matrix");
        if (torus.matrix.rows() != gs->torus_dim()) throw ParseError("structure: torus matrix has wrong size");
      } else {
        throw ParseError("structure: torus must be \"killing\", {\"blocks\": ...} or {\"matrix\": ...}");
      }
    }

    std::optional<TorusComplexStructure> jt;
    if (doc.contains("jt") && !doc["jt"].is_null()) {
      jt = TorusComplexStructure{to_matrix(doc["jt"], "jt")};
      if (jt->matrix.rows() != gs->torus_dim()) throw ParseError("structure: jt has wrong size");
    }
    return HermitianStructure(gs, z, std::move(torus), std::move(fiber), std::move(jt));
  } catch (const json::exception& e) {
    throw ParseError(std::string("structure: ") + e.what());
  } catch (const InvalidTypeError& e) {
    throw ParseError(std::string("structure: ") + e.what());
  }
}

HermitianStructure read_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open structure file '" + path + "'");
  return read_structure(in);
}

void write_structure(std::ostream& os, const HermitianStructure& h) {
  const GroupSpec& gs = h.group();
  json doc;
  doc["factors"] = json::array();
  for (int fi = 0; fi < gs.num_factors(); ++fi) {
    const RootSystem& rs = gs.roots(fi);
    std::vector<double> x;
    for (int a = 0; a < rs.num_positive(); ++a) x.push_back(h.fiber().x[static_cast<std::size_t>(gs.global(fi, a))]);
    doc["factors"].push_back({{"family", std::string(1, rs.type().family)},
                              {"rank", rs.rank()},
                              {"normalization", std::string(to_string(rs.normalization()))},
                              {"z", h.z()[static_cast<std::size_t>(fi)]},
                              {"x", x}});
  }
  const Eigen::MatrixXd& m = h.torus().matrix;
  if (m == TorusMetric::killing(gs, h.z()).matrix) {
    doc["torus"] = "killing";
  } else {
    Eigen::MatrixXd off_blocks = m;
    json blocks = json::array();
    for (int fi = 0; fi < gs.num_factors(); ++fi) {
      const auto [off, n] = gs.torus_block(fi);
      blocks.push_back(from_matrix(m.block(off, off, n, n)));
      off_blocks.block(off, off, n, n).setZero();
    }
    if (off_blocks.isZero(0.0))
      doc["torus"] = {{"blocks", blocks}};
    else
      doc["torus"] = {{"matrix", from_matrix(m)}};
  }
  if (h.jt()) doc["jt"] = from_matrix(h.jt()->matrix);
  os << doc.dump(2) << "\n";
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string cell; std::getline(ss, cell, ',');) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::logic_error&) {
      throw ParseError("not a number: '" + cell + "'");
    }
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (used != cell.size()) throw ParseError("not a number: '" + cell + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

}  // namespace skt
