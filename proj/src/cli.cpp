#include "latmech/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "latmech/fe_homog.hpp"
#include "latmech/io.hpp"
#include "latmech/lattice.hpp"
#include "latmech/linalg.hpp"
#include "latmech/metrics.hpp"
#include "latmech/optimize.hpp"
#include "latmech/psd.hpp"
#include "latmech/rng.hpp"

#ifndef LATMECH_VERSION
#define LATMECH_VERSION "0.0.0"
#endif

namespace latmech::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::system_clock;

/// Raised for bad flag values that CLI11 cannot check by itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string iso_time(Clock::time_point t) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count() % 1000;
  const std::time_t secs = Clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms << 'Z';
  return s.str();
}

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

BeamMaterial parse_material(const std::string& spec) {
  BeamMaterial mat;
  if (spec.empty()) return mat;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--material expects E=<v>,nu=<v>, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("--material: '" + item + "' is not a number");
    }
    if (key == "E")
      mat.youngs_modulus = value;
    else if (key == "nu")
      mat.poisson_ratio = value;
    else
      throw UsageError("--material: unknown key '" + key + "'");
  }
  mat.validate();
  return mat;
}

Vec3 parse_vec3(const std::string& text, const char* flag) {
  std::stringstream ss(text);
  std::string item;
  std::vector<double> v;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
  }
  if (v.size() != 3) throw UsageError(std::string(flag) + " expects three comma-separated numbers");
  return {v[0], v[1], v[2]};
}

/// Destination for one command's data: a file with a sibling manifest, or
/// the output stream.
class Sink {
 public:
  Sink(std::string path, std::ostream& fallback) : path_(std::move(path)), fallback_(fallback) {
    if (!path_.empty()) {
      file_.open(path_, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot write '" + path_ + "'");
    }
  }
  std::ostream& stream() { return path_.empty() ? fallback_ : file_; }
  const std::string& path() const { return path_; }

  void close() {
    if (path_.empty()) return;
    file_.close();
    if (!file_) throw std::runtime_error("failed writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ofstream file_;
};

struct RunContext {
  std::string command;
  CLI::App* sub = nullptr;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  Clock::time_point started = Clock::now();
  json timings = json::object();
};

json arguments_of(const RunContext& ctx) {
  json args = json::object();
  for (const CLI::Option* opt : ctx.sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    const auto& results = opt->results();
    if (opt->get_expected_max() == 0)
      args[opt->get_name()] = true;
    else if (results.size() == 1)
      args[opt->get_name()] = results.front();
    else
      args[opt->get_name()] = results;
  }
  args["--threads"] = std::to_string(ctx.threads);
  return args;
}

void write_manifest(const RunContext& ctx, const std::string& out_path) {
  if (out_path.empty()) return;
  const auto finished = Clock::now();
  json m;
  m["command"] = ctx.command;
  m["arguments"] = arguments_of(ctx);
  m["seed"] = ctx.seed;
  m["tool_version"] = LATMECH_VERSION;
  m["started"] = iso_time(ctx.started);
  m["finished"] = iso_time(finished);
  m["seconds"] = std::chrono::duration<double>(finished - ctx.started).count();
  m["timings"] = ctx.timings;
  const std::string path = out_path + ".manifest.json";
  std::ofstream f(path, std::ios::trunc);
  f << m.dump(2) << '\n';
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
}

void finish_output(Sink& sink, const RunContext& ctx) {
  sink.close();
  write_manifest(ctx, sink.path());
}

const io::StiffnessRecord& pick_record(const std::vector<io::StiffnessRecord>& recs, std::size_t index,
                                       const std::string& path) {
  if (index >= recs.size())
    throw std::runtime_error("'" + path + "' has " + std::to_string(recs.size()) + " records, index " +
                             std::to_string(index) + " requested");
  return recs[index];
}

void write_surface_table(std::ostream& out, const ElasticTensor4& c, std::size_t n, std::uint64_t seed) {
  const auto dirs = metrics::DirectionSet::random(n, seed);
  out << "# dx dy dz modulus\n";
  for (const Vec3& d : dirs.directions)
    out << g17(d.x()) << ' ' << g17(d.y()) << ' ' << g17(d.z()) << ' ' << g17(directional_modulus(c, d)) << '\n';
}

// -- subcommands ---------------------------------------------------------------

struct HomogenizeArgs {
  std::string catalogue;
  std::vector<double> radii;
  std::string material;
  std::string out;
  std::size_t surface = 0;
  std::uint64_t seed = 0;
  bool windowed = false;
};

int run_homogenize(const HomogenizeArgs& a, RunContext& ctx, std::ostream& out, std::ostream& err) {
  ctx.seed = a.seed;
  const BeamMaterial mat = parse_material(a.material);
  const auto lats = io::read_lattices_file(a.catalogue);
  for (double r : a.radii)
    if (!(r > 0.0)) throw UsageError("--radius must be positive");

  std::vector<BatchItem> items;
  if (a.windowed) {
    for (const auto& lat : lats) {
      const std::vector<double> radii = a.radii.empty() ? std::vector<double>{lat.radius()} : a.radii;
      for (double r : radii) {
        BatchItem item{lat.name(), r, std::nullopt, {}};
        try {
          item.result = homogenize_windowed(lat.with_radius(r), mat);
        } catch (const std::exception& ex) {
          item.error = ex.what();
        }
        items.push_back(std::move(item));
      }
    }
  } else {
    items = homogenize_batch(lats, a.radii, mat, ctx.threads);
  }

  Sink sink(a.out, out);
  const auto dirs = metrics::DirectionSet::random(a.surface, a.seed);
  json timings = json::array();
  int failures = 0;
  for (const auto& item : items) {
    if (!item.result) {
      err << "homogenize: lattice '" << item.name << "' (r = " << item.radius << "): " << item.error << '\n';
      ++failures;
      continue;
    }
    const auto& res = *item.result;
    io::StiffnessRecord rec{item.name, item.radius, res.relative_density, to_mandel(res.stiffness)};
    std::string line = io::to_json_line(rec);
    if (a.surface > 0) {
      json j = json::parse(line);
      json samples = json::array();
      for (const Vec3& d : dirs.directions)
        samples.push_back({d.x(), d.y(), d.z(), directional_modulus(res.stiffness, d)});
      j["surface"] = samples;
      line = j.dump();
    }
    sink.stream() << line << '\n';
    timings.push_back({{"name", item.name}, {"radius", item.radius}, {"seconds", res.seconds}, {"dofs", res.dof_count}});
  }
  ctx.timings = json{{"per_lattice", timings}};
  finish_output(sink, ctx);
  return failures > 0 ? kExitDomain : kExitOk;
}

struct SurfaceArgs {
  std::string record;
  std::size_t index = 0;
  std::size_t n = 250;
  std::uint64_t seed = 0;
  std::string out;
};

int run_surface(const SurfaceArgs& a, RunContext& ctx, std::ostream& out) {
  ctx.seed = a.seed;
  const auto recs = io::read_stiffness_file(a.record);
  const auto& rec = pick_record(recs, a.index, a.record);
  Sink sink(a.out, out);
  write_surface_table(sink.stream(), rec.tensor(), a.n, a.seed);
  finish_output(sink, ctx);
  return kExitOk;
}

struct PsdArgs {
  std::string in;
  std::string method;
  std::string out;
};

int run_psd(const PsdArgs& a, RunContext& ctx, std::ostream& out) {
  const auto method = psd::parse_method(a.method);
  if (!method) throw UsageError("unknown method '" + a.method + "'");
  auto recs = io::read_stiffness_file(a.in);
  for (auto& rec : recs) rec.mandel = MandelMatrix(psd::project(rec.mandel.matrix(), *method));
  Sink sink(a.out, out);
  io::write_stiffness(sink.stream(), recs);
  finish_output(sink, ctx);
  return kExitOk;
}

struct MetricsArgs {
  std::string pred;
  std::string target;
  std::size_t dirs = 250;
  std::uint64_t seed = 0;
  std::string equiv_catalogue;
  std::size_t rotations = 10;
  std::string out;
};

int run_metrics(const MetricsArgs& a, RunContext& ctx, std::ostream& out) {
  ctx.seed = a.seed;
  const auto pred = io::read_stiffness_file(a.pred);
  const auto target = io::read_stiffness_file(a.target);
  std::vector<ElasticTensor4> p, t;
  for (const auto& r : pred) p.push_back(r.tensor());
  for (const auto& r : target) t.push_back(r.tensor());
  const auto dirs = metrics::DirectionSet::random(a.dirs, a.seed);
  auto report = metrics::evaluate(p, t, dirs);

  if (!a.equiv_catalogue.empty()) {
    const auto lats = io::read_lattices_file(a.equiv_catalogue);
    const metrics::Predictor fe{[](const Lattice& l) { return homogenize(l).stiffness; }, true};
    report.l_equiv = metrics::l_equiv(fe, lats, metrics::random_rotations(a.rotations, a.seed), dirs, ctx.threads);
  }

  json j;
  j["count"] = report.count;
  j["l_comp"] = report.l_comp;
  j["l_train"] = report.l_train;
  j["l_dir"] = report.l_dir;
  j["l_dir_rel"] = report.l_dir_rel;
  j["l_equiv"] = report.l_equiv ? json(*report.l_equiv) : json(nullptr);
  j["negative_eig_percent"] = 100.0 * report.negative_eig_fraction;
  j["directions"] = a.dirs;
  j["seed"] = a.seed;
  Sink sink(a.out, out);
  sink.stream() << j.dump() << '\n';
  finish_output(sink, ctx);
  return kExitOk;
}

struct PerturbArgs {
  std::string catalogue;
  double level = 0.0;
  std::uint64_t seed = 0;
  int realizations = 1;
  std::string out;
};

int run_perturb(const PerturbArgs& a, RunContext& ctx, std::ostream& out, std::ostream& err) {
  ctx.seed = a.seed;
  if (!(a.level >= 0.0)) throw UsageError("--level must be non-negative");
  if (a.realizations < 1) throw UsageError("--realizations must be at least 1");
  const auto lats = io::read_lattices_file(a.catalogue);
  std::vector<Lattice> expanded;
  bool failed = false;
  for (std::size_t l = 0; l < lats.size(); ++l) {
    if (lats[l].node_count() < 2) {
      err << "perturb: lattice '" << lats[l].name() << "' has one node; skipped\n";
      failed = true;
      continue;
    }
    for (int k = 0; k < a.realizations; ++k) {
      const std::uint64_t s = derive_seed(derive_seed(a.seed, l), static_cast<std::uint64_t>(k));
      expanded.push_back(perturb(lats[l], a.level, s).with_name(lats[l].name() + "/p" + std::to_string(k)));
    }
  }
  Sink sink(a.out, out);
  io::write_lattices(sink.stream(), expanded);
  finish_output(sink, ctx);
  return failed ? kExitDomain : kExitOk;
}

struct OptimizeArgs {
  std::string catalogue;
  std::string name;
  std::string target;
  std::size_t target_index = 0;
  int steps = 50;
  double lr = optimize::kDefaultStepSize;
  double fd_step = 1e-5;
  bool plain = false;
  double kick = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> free_nodes;
  std::string out;
};

json trace_json(const optimize::DesignTrace& t) {
  json j;
  j["objective_history"] = t.objective_history;
  j["gradient_norms"] = t.gradient_norms;
  j["accepted_steps"] = t.accepted_steps;
  j["stop_reason"] = t.stop_reason;
  j["final_lattice"] = json::parse(io::to_json_line(t.final_lattice));
  io::StiffnessRecord rec{t.final_lattice.name(), t.final_lattice.radius(), relative_density(t.final_lattice),
                          to_mandel(t.final_stiffness)};
  j["final_stiffness"] = json::parse(io::to_json_line(rec));
  return j;
}

int run_optimize(const OptimizeArgs& a, RunContext& ctx, std::ostream& out, std::ostream& err) {
  ctx.seed = a.seed;
  const auto lats = io::read_lattices_file(a.catalogue);
  const auto it = std::find_if(lats.begin(), lats.end(), [&](const Lattice& l) { return l.name() == a.name; });
  if (it == lats.end()) throw std::runtime_error("no lattice named '" + a.name + "' in '" + a.catalogue + "'");
  const auto targets = io::read_stiffness_file(a.target);

  optimize::DesignProblem prob;
  prob.base = a.kick > 0.0 ? perturb(*it, a.kick, a.seed) : *it;
  prob.target = pick_record(targets, a.target_index, a.target).tensor();
  prob.free_nodes = a.free_nodes;
  if (prob.free_nodes.empty())
    for (std::size_t n = 0; n < it->node_count(); ++n) prob.free_nodes.push_back(static_cast<int>(n));
  prob.step_size = a.lr;
  prob.max_steps = a.steps;
  prob.fd_step = a.fd_step;
  prob.backtracking = !a.plain;
  prob.threads = ctx.threads;

  optimize::DesignTrace trace;
  int code = kExitOk;
  try {
    trace = optimize::solve(prob);
  } catch (const optimize::DesignAborted& ex) {
    err << "optimize: " << ex.what() << '\n';
    trace = ex.trace();
    code = kExitDomain;
  }
  Sink sink(a.out, out);
  sink.stream() << trace_json(trace).dump() << '\n';
  finish_output(sink, ctx);
  return code;
}

struct RotateArgs {
  std::string records;
  std::string catalogue;
  std::string axis;
  double angle_deg = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_rotate(const RotateArgs& a, RunContext& ctx, std::ostream& out) {
  ctx.seed = a.seed;
  Mat3 r;
  if (!a.axis.empty()) {
    const Vec3 axis = parse_vec3(a.axis, "--axis");
    if (!(axis.norm() > 0.0)) throw UsageError("--axis must be nonzero");
    r = linalg::axis_angle(axis.normalized(), a.angle_deg * std::numbers::pi / 180.0);
  } else {
    r = CounterRng(a.seed, 3).rotation(0);
  }
  Sink sink(a.out, out);
  if (!a.records.empty()) {
    auto recs = io::read_stiffness_file(a.records);
    const RotationPair rp = mandel_rotation(r);
    for (auto& rec : recs) rec.mandel = rotate_mandel(rec.mandel, rp);
    io::write_stiffness(sink.stream(), recs);
  } else {
    std::vector<Lattice> lats;
    for (const auto& l : io::read_lattices_file(a.catalogue)) lats.push_back(rotate_lattice(l, r));
    io::write_lattices(sink.stream(), lats);
  }
  finish_output(sink, ctx);
  return kExitOk;
}

struct ValidateArgs {
  std::string catalogue;
  std::string records;
};

int run_validate(const ValidateArgs& a, std::ostream& out) {
  if (!a.catalogue.empty()) {
    const auto lats = io::read_lattices_file(a.catalogue);
    std::size_t nodes = 0, edges = 0;
    std::map<std::string, std::size_t> types{{"inner", 0}, {"face", 0}, {"edge", 0}, {"corner", 0}};
    for (const auto& l : lats) {
      nodes += l.node_count();
      edges += l.edge_count();
      for (const Vec3& x : l.nodes()) ++types[to_string(classify_node(x))];
    }
    out << a.catalogue << ": " << lats.size() << " lattices, " << nodes << " nodes (" << types["inner"] << " inner, "
        << types["face"] << " face, " << types["edge"] << " edge, " << types["corner"] << " corner), " << edges
        << " edges\n";
  }
  if (!a.records.empty()) {
    const auto recs = io::read_stiffness_file(a.records);
    std::size_t indefinite = 0;
    for (const auto& r : recs)
      if (min_eigenvalue(r.tensor()) < 0.0) ++indefinite;
    out << a.records << ": " << recs.size() << " stiffness records, " << indefinite << " not positive semi-definite\n";
  }
  return kExitOk;
}

}  // namespace

const char* version() { return LATMECH_VERSION; }

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic strut-lattice elasticity toolkit", "latmech"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LATMECH_VERSION));
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for batch operations")->check(CLI::Range(1u, 1024u));

  HomogenizeArgs ha;
  auto* hom = app.add_subcommand("homogenize", "Effective stiffness of every lattice in a catalogue");
  hom->add_option("--catalogue", ha.catalogue, "Lattice catalogue (JSON lines)")->required();
  hom->add_option("--radius", ha.radii, "Strut radius; repeat for a sweep (default: the record's radius)");
  hom->add_option("--material", ha.material, "Beam material as E=<v>,nu=<v>");
  hom->add_option("--out", ha.out, "Output file (default: standard output)");
  hom->add_option("--surface", ha.surface, "Append N directional-modulus samples per record");
  hom->add_option("--seed", ha.seed, "Seed for the surface directions");
  hom->add_flag("--windowed", ha.windowed, "Solve on the windowed representation");

  SurfaceArgs sa;
  auto* sur = app.add_subcommand("surface", "Directional modulus table for one stiffness record");
  sur->add_option("--record", sa.record, "Stiffness records (JSON lines)")->required();
  sur->add_option("--index", sa.index, "Record index in the file");
  sur->add_option("-n,--samples", sa.n, "Number of directions");
  sur->add_option("--seed", sa.seed, "Seed for the directions");
  sur->add_option("--out", sa.out, "Output file (default: standard output)");

  PsdArgs pa;
  auto* psdc = app.add_subcommand("psd-project", "Project stiffness records onto the PSD cone");
  psdc->add_option("--in", pa.in, "Stiffness records")->required();
  psdc->add_option("--method", pa.method, "Projection method")
      ->required()
      ->check(CLI::IsMember({"square", "fourth", "exp", "trunc2", "trunc4", "eigclamp"}));
  psdc->add_option("--out", pa.out, "Output file (default: standard output)");

  MetricsArgs ma;
  auto* met = app.add_subcommand("metrics", "Loss metrics between predicted and target records");
  met->add_option("--pred", ma.pred, "Predicted stiffness records")->required();
  met->add_option("--target", ma.target, "Target stiffness records")->required();
  met->add_option("--dirs", ma.dirs, "Number of random directions")->check(CLI::PositiveNumber);
  met->add_option("--seed", ma.seed, "Seed for directions and rotations");
  met->add_option("--equiv-catalogue", ma.equiv_catalogue, "Also report l_equiv of the FE homogenizer on these");
  met->add_option("--rotations", ma.rotations, "Rotations for l_equiv")->check(CLI::PositiveNumber);
  met->add_option("--out", ma.out, "Output file (default: standard output)");

  PerturbArgs pe;
  auto* per = app.add_subcommand("perturb", "Expand a catalogue with randomly displaced nodes");
  per->add_option("--catalogue", pe.catalogue, "Lattice catalogue")->required();
  per->add_option("--level", pe.level, "Displacement magnitude (transformed units)")->required();
  per->add_option("--seed", pe.seed, "Base seed");
  per->add_option("--realizations", pe.realizations, "Perturbed copies per lattice");
  per->add_option("--out", pe.out, "Output file (default: standard output)");

  OptimizeArgs oa;
  auto* opt = app.add_subcommand("optimize", "Move nodes towards a target stiffness");
  opt->add_option("--catalogue", oa.catalogue, "Lattice catalogue")->required();
  opt->add_option("--name", oa.name, "Lattice to start from")->required();
  opt->add_option("--target", oa.target, "Target stiffness records")->required();
  opt->add_option("--target-index", oa.target_index, "Record index in the target file");
  opt->add_option("--steps", oa.steps, "Maximum descent steps")->check(CLI::NonNegativeNumber);
  opt->add_option("--lr", oa.lr, "Step size")->check(CLI::PositiveNumber);
  opt->add_option("--fd-step", oa.fd_step, "Finite-difference step")->check(CLI::PositiveNumber);
  opt->add_flag("--plain", oa.plain, "Plain gradient descent without backtracking");
  opt->add_option("--kick", oa.kick, "Randomly displace every node by this much before starting");
  opt->add_option("--seed", oa.seed, "Seed for --kick");
  opt->add_option("--free", oa.free_nodes, "Free node indices (default: all)");
  opt->add_option("--out", oa.out, "Output file (default: standard output)");

  RotateArgs ra;
  auto* rot = app.add_subcommand("rotate", "Rotate stiffness records or lattices");
  auto* rot_rec = rot->add_option("--records", ra.records, "Stiffness records");
  auto* rot_cat = rot->add_option("--catalogue", ra.catalogue, "Lattice catalogue");
  rot_rec->excludes(rot_cat);
  rot->add_option("--axis", ra.axis, "Rotation axis x,y,z (default: random rotation from --seed)");
  rot->add_option("--angle", ra.angle_deg, "Rotation angle in degrees");
  rot->add_option("--seed", ra.seed, "Seed for the random rotation");
  rot->add_option("--out", ra.out, "Output file (default: standard output)");

  ValidateArgs va;
  auto* val = app.add_subcommand("validate", "Parse and check catalogue or stiffness files");
  val->add_option("--catalogue", va.catalogue, "Lattice catalogue");
  val->add_option("--records", va.records, "Stiffness records");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  RunContext ctx;
  ctx.threads = threads;
  try {
    CLI::App* sub = app.get_subcommands().front();
    ctx.sub = sub;
    ctx.command = sub->get_name();
    if (sub == hom) return run_homogenize(ha, ctx, out, err);
    if (sub == sur) return run_surface(sa, ctx, out);
    if (sub == psdc) return run_psd(pa, ctx, out);
    if (sub == met) return run_metrics(ma, ctx, out);
    if (sub == per) return run_perturb(pe, ctx, out, err);
    if (sub == opt) return run_optimize(oa, ctx, out, err);
    if (sub == rot) {
      if (ra.records.empty() && ra.catalogue.empty()) throw UsageError("rotate needs --records or --catalogue");
      return run_rotate(ra, ctx, out);
    }
    if (sub == val) {
      if (va.records.empty() && va.catalogue.empty()) throw UsageError("validate needs --catalogue or --records");
      return run_validate(va, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace latmech::cli
