#include "sfw/instance_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace sfw {

namespace {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "instance payloads are stored little-endian");

class PayloadWriter {
 public:
  void add(const std::string& name, const Mat& m) {
    blocks_.push_back({{"name", name}, {"rows", m.rows()}, {"cols", m.cols()}, {"offset", data_.size()}});
    data_.insert(data_.end(), m.data(), m.data() + m.size());
  }
  void add(const std::string& name, const Vec& v) {
    blocks_.push_back({{"name", name}, {"rows", v.size()}, {"cols", 1}, {"offset", data_.size()}});
    data_.insert(data_.end(), v.data(), v.data() + v.size());
  }
  const json& blocks() const { return blocks_; }
  const std::vector<double>& data() const { return data_; }

 private:
  json blocks_ = json::array();
  std::vector<double> data_;
};

class PayloadReader {
 public:
  PayloadReader(const json& blocks, std::vector<double> data)
      : blocks_(blocks), data_(std::move(data)) {}

  Mat matrix(const std::string& name) const {
    for (const json& b : blocks_) {
      if (b.at("name") != name) continue;
      const auto rows = b.at("rows").get<Eigen::Index>();
      const auto cols = b.at("cols").get<Eigen::Index>();
      const auto offset = b.at("offset").get<std::size_t>();
      if (offset + static_cast<std::size_t>(rows * cols) > data_.size()) {
        throw InvalidArgument("instance payload block '" + name + "' out of range");
      }
      return Eigen::Map<const Mat>(data_.data() + offset, rows, cols);
    }
    throw InvalidArgument("instance payload block '" + name + "' missing");
  }
  Vec vector(const std::string& name) const {
    Mat m = matrix(name);
    if (m.cols() != 1) throw InvalidArgument("instance payload block '" + name + "' is not a vector");
    return m.col(0);
  }

 private:
  json blocks_;
  std::vector<double> data_;
};

void describe_objective(const Objective& obj, json& header, PayloadWriter& payload) {
  if (const auto* scaled = dynamic_cast<const ScaledObjective*>(&obj)) {
    header["scale"] = scaled->beta();
    describe_objective(scaled->inner(), header, payload);
    return;
  }
  if (const auto* q = dynamic_cast<const QuadraticObjective*>(&obj)) {
    if (q->is_least_squares()) {
      header["type"] = "least_squares";
      payload.add("A", q->factor());
      payload.add("b", q->target());
    } else {
      header["type"] = "quadratic";
      header["constant"] = q->constant();
      payload.add("H", q->hessian());
      payload.add("g", q->linear());
    }
    return;
  }
  if (const auto* lg = dynamic_cast<const LogisticObjective*>(&obj)) {
    header["type"] = "logistic";
    header["lambda"] = lg->lambda();
    payload.add("A", lg->data());
    payload.add("labels", lg->labels());
    return;
  }
  throw UnsupportedOperation("cannot serialize objective '" + obj.name() + "'");
}

std::shared_ptr<const Objective> rebuild_objective(const json& h, const PayloadReader& payload) {
  const std::string type = h.at("type");
  std::shared_ptr<const Objective> obj;
  if (type == "least_squares") {
    obj = std::make_shared<QuadraticObjective>(
        QuadraticObjective::least_squares(payload.matrix("A"), payload.vector("b")));
  } else if (type == "quadratic") {
    obj = std::make_shared<QuadraticObjective>(payload.matrix("H"), payload.vector("g"),
                                               h.value("constant", 0.0));
  } else if (type == "logistic") {
    obj = std::make_shared<LogisticObjective>(payload.matrix("A"), payload.vector("labels"),
                                              h.at("lambda").get<double>());
  } else {
    throw InvalidArgument("unknown objective type in instance: " + type);
  }
  if (h.contains("scale")) obj = std::make_shared<ScaledObjective>(obj, h.at("scale").get<double>());
  return obj;
}

}  // namespace

void write_instance(std::ostream& out, const ProblemInstance& inst) {
  if (!inst.objective || !inst.polytope) throw InvalidArgument("write_instance: incomplete instance");
  PayloadWriter payload;
  json header;
  header["family"] = inst.family;
  header["seed"] = inst.seed;
  if (inst.known_fstar) header["fstar"] = *inst.known_fstar;

  const PolytopeModel& P = *inst.polytope;
  json poly{{"kind", to_string(P.kind())}, {"n", P.dim()}, {"eta", P.geometry().eta}};
  if (const auto* flow = dynamic_cast<const FlowPolytope*>(&P)) {
    std::ostringstream net;
    flow->network().write(net);
    poly["network"] = net.str();
  }
  header["polytope"] = poly;

  json obj;
  describe_objective(*inst.objective, obj, payload);
  header["objective"] = obj;

  payload.add("x0", inst.x0);
  if (inst.planted) payload.add("planted", *inst.planted);
  header["blocks"] = payload.blocks();

  out << header.dump() << '\n';
  const auto& data = payload.data();
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!out) throw Error("write_instance: write failed");
}

namespace {

ProblemInstance read_instance_unchecked(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("read_instance: missing header");
  const json header = json::parse(line);
  std::size_t count = 0;
  for (const json& b : header.at("blocks")) {
    count = std::max(count, b.at("offset").get<std::size_t>() +
                                b.at("rows").get<std::size_t>() * b.at("cols").get<std::size_t>());
  }
  std::vector<double> data(count);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double)) {
    throw InvalidArgument("read_instance: truncated payload");
  }
  const PayloadReader payload(header.at("blocks"), std::move(data));

  ProblemInstance inst;
  inst.family = header.at("family");
  inst.seed = header.at("seed");
  if (header.contains("fstar")) inst.known_fstar = header.at("fstar").get<double>();

  const json& poly = header.at("polytope");
  const PolytopeKind kind = parse_polytope_kind(poly.at("kind"));
  const double eta = poly.at("eta");
  if (kind == PolytopeKind::flow) {
    std::istringstream net(poly.at("network").get<std::string>());
    inst.polytope = std::make_shared<FlowPolytope>(DagFlowNetwork::read(net), eta);
  } else {
    inst.polytope = make_polytope(kind, poly.at("n").get<std::size_t>(), eta);
  }
  inst.objective = rebuild_objective(header.at("objective"), payload);
  inst.x0 = payload.vector("x0");
  for (const json& b : header.at("blocks")) {
    if (b.at("name") == "planted") inst.planted = payload.vector("planted");
  }
  return inst;
}

}  // namespace

ProblemInstance read_instance(std::istream& in) {
  try {
    return read_instance_unchecked(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("read_instance: malformed header: ") + e.what());
  }
}

void save_instance(const std::filesystem::path& path, const ProblemInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("save_instance: cannot open " + path.string());
  write_instance(out, inst);
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("load_instance: cannot open " + path.string());
  return read_instance(in);
}

}  // namespace sfw
