#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "optuple/decomp.hpp"
#include "optuple/json_io.hpp"
#include "optuple/oracle.hpp"

namespace {

using namespace optuple;

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitAdmissibility = 4;

struct Options {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string registry = "./registry";
  int max_dim = 256;
  int aleph_tower = 3;
};

void emit(const Json& j) { std::cout << j.dump(1) << "\n"; }

int run_decompose(const Options& opt, const std::string& path) {
  MatrixTuple a = tuple_from_json(load_json_file(path));
  DecompositionReport report = isotypic_decomposition(a, opt.tol, opt.seed);
  emit(report_to_json(report));
  return 0;
}

int run_classify(const Options& opt, const std::string& path) {
  MatrixTuple a = tuple_from_json(load_json_file(path));
  AtomRegistry registry = AtomRegistry::open(opt.registry);
  emit(class_to_json(classify(a, registry, opt.tol, opt.seed)));
  return 0;
}

int run_equiv(const Options& opt, const std::string& pa, const std::string& pb) {
  MatrixTuple a = tuple_from_json(load_json_file(pa));
  MatrixTuple b = tuple_from_json(load_json_file(pb));
  return are_equivalent(a, b, opt.tol) ? 0 : 1;
}

int run_btransform(const Options&, const std::string& path, bool inverse) {
  MatrixTuple a = tuple_from_json(load_json_file(path));
  emit(tuple_to_json(inverse ? inverse_b_transform(a) : b_transform(a)));
  return 0;
}

int run_split(const Options& opt, const std::string& path,
              const std::string& ideal, const std::string& out) {
  MatrixTuple a = tuple_from_json(load_json_file(path));
  Json manifest;
  if (ideal == "contraction") {
    ContractionSplit split = contraction_parts(a, opt.tol, opt.seed);
    save_json_file(out + ".below.json", tuple_to_json(split.below));
    save_json_file(out + ".below.projection.json",
                   matrix_to_json(split.below_projection));
    save_json_file(out + ".not-attained.json", tuple_to_json(split.not_attained));
    save_json_file(out + ".attained.json", tuple_to_json(split.attained));
    save_json_file(out + ".attained.projection.json",
                   matrix_to_json(split.attained_projection));
    manifest["below"] = out + ".below.json";
    manifest["not_attained"] = out + ".not-attained.json";
    manifest["attained"] = out + ".attained.json";
    manifest["dims"] = {split.below.dim(), split.not_attained.dim(),
                        split.attained.dim()};
  } else {
    IdealSplit split = ideal_split(a, predicate_by_name(ideal, opt.tol), opt.tol,
                                   opt.seed);
    save_json_file(out + ".part.json", tuple_to_json(split.part));
    save_json_file(out + ".part.projection.json",
                   matrix_to_json(split.part_projection));
    save_json_file(out + ".complement.json", tuple_to_json(split.complement));
    save_json_file(out + ".complement.projection.json",
                   matrix_to_json(split.complement_projection));
    manifest["part"] = out + ".part.json";
    manifest["complement"] = out + ".complement.json";
    manifest["dims"] = {split.part.dim(), split.complement.dim()};
  }
  emit(manifest);
  return 0;
}

int run_class_op(const Options&, const std::string& op,
                 const std::vector<std::string>& args) {
  auto load_class = [](const std::string& p) {
    return class_from_json(load_json_file(p));
  };
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw InputError("class-op " + op + " takes " + std::to_string(n) +
                       " argument(s)");
  };

  if (op == "oplus" || op == "sup" || op == "inf") {
    if (args.empty()) throw InputError("class-op " + op + " needs inputs");
    std::vector<TupleClass> classes;
    for (const auto& p : args) classes.push_back(load_class(p));
    TupleClass out = op == "oplus" ? oplus(classes)
                     : op == "sup" ? sup(classes)
                                   : inf(classes);
    emit(class_to_json(out));
    return 0;
  }
  if (op == "minus-delta" || op == "minus-nabla") {
    need(2);
    TupleClass b = load_class(args[0]);
    TupleClass a = load_class(args[1]);
    emit(class_to_json(op == "minus-delta" ? minus_delta(b, a)
                                           : minus_nabla(b, a)));
    return 0;
  }
  if (op == "scalar-mul") {
    need(2);
    ExtScalar alpha = parse_ext_scalar(args[0]);
    emit(class_to_json(scalar_mul(alpha, load_class(args[1]))));
    return 0;
  }
  if (op == "partition") {
    need(1);
    UnityPartition p = partition_of_unity(load_class(args[0]));
    Json parts = Json::array();
    for (const auto& [key, part] : p.parts) {
      Json one;
      one["type"] = key.type == PartType::TypeI    ? "I"
                    : key.type == PartType::TypeII ? "II"
                                               : "III";
      one["level"] = scalar_to_json(key.level);
      one["part"] = class_to_json(part);
      parts.push_back(std::move(one));
    }
    Json j;
    j["parts"] = std::move(parts);
    j["sm"] = class_to_json(p.sm);
    emit(j);
    return 0;
  }
  if (op == "ratio") {
    need(2);
    emit(scalar_to_json(ratio(load_class(args[0]), load_class(args[1]))));
    return 0;
  }
  if (op == "flags") {
    need(1);
    auto flags = type_flags(load_class(args[0]));
    emit(Json(std::vector<std::string>(flags.begin(), flags.end())));
    return 0;
  }
  if (op == "dim") {
    need(1);
    emit(scalar_to_json(symbolic_dim(load_class(args[0]))));
    return 0;
  }
  throw InputError("unknown class-op: " + op);
}

int run_laws(const Options&, int registry_size) {
  LawSuiteReport report = exhaustive_law_suite(registry_size);
  emit(law_suite_to_json(report));
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposition calculus for finite systems of complex matrices"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("OPTUPLE_REGISTRY")) opt.registry = env;
  app.add_option("--tol", opt.tol, "numerical tolerance")->capture_default_str();
  app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
  app.add_option("--registry", opt.registry, "atom registry directory")
      ->capture_default_str();
  app.add_option("--max-dim", opt.max_dim, "largest accepted matrix dimension")
      ->capture_default_str();
  app.add_option("--aleph-tower", opt.aleph_tower, "height of the aleph tower")
      ->capture_default_str();

  std::string in_a, in_b, ideal, out_prefix = "split", class_op;
  std::vector<std::string> class_args;
  bool inverse = false;
  int registry_size = 3;

  auto* decompose = app.add_subcommand("decompose", "isotypic decomposition");
  decompose->add_option("tuple", in_a, "tuple JSON file")->required();

  auto* classify_cmd = app.add_subcommand("classify", "class against a registry");
  classify_cmd->add_option("tuple", in_a, "tuple JSON file")->required();

  auto* equiv = app.add_subcommand("equiv", "unitary equivalence test");
  equiv->add_option("a", in_a, "tuple JSON file")->required();
  equiv->add_option("b", in_b, "tuple JSON file")->required();

  auto* btransform = app.add_subcommand("btransform", "bounded transform");
  btransform->add_option("tuple", in_a, "tuple JSON file")->required();
  btransform->add_flag("--inverse", inverse, "apply the inverse transform");

  auto* split = app.add_subcommand("split", "ideal-relative decomposition");
  split->add_option("tuple", in_a, "tuple JSON file")->required();
  split->add_option("--ideal", ideal,
                    "jointly-normal | separately-normal | norm<=R | contraction")
      ->required();
  split->add_option("--out", out_prefix, "output file prefix")
      ->capture_default_str();

  auto* class_op_cmd = app.add_subcommand("class-op", "symbolic class algebra");
  class_op_cmd->add_option("op", class_op,
                           "oplus|sup|inf|minus-delta|minus-nabla|scalar-mul|"
                           "partition|ratio|flags|dim")
      ->required();
  class_op_cmd->add_option("args", class_args, "scalar literal and/or class files");

  auto* laws = app.add_subcommand("laws", "exhaustive symbolic law suite");
  laws->add_option("--registry-size", registry_size, "labels in the registry")
      ->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    set_max_tuple_dim(opt.max_dim);
    set_aleph_tower_height(opt.aleph_tower);
    if (decompose->parsed()) return run_decompose(opt, in_a);
    if (classify_cmd->parsed()) return run_classify(opt, in_a);
    if (equiv->parsed()) return run_equiv(opt, in_a, in_b);
    if (btransform->parsed()) return run_btransform(opt, in_a, inverse);
    if (split->parsed()) return run_split(opt, in_a, ideal, out_prefix);
    if (class_op_cmd->parsed()) return run_class_op(opt, class_op, class_args);
    if (laws->parsed()) return run_laws(opt, registry_size);
  } catch (const ToleranceError& e) {
    std::cerr << "numerical ambiguity: " << e.what() << "\n  spectrum:";
    for (double s : e.spectrum()) std::cerr << " " << s;
    std::cerr << "\n";
    return kExitNumerical;
  } catch (const AdmissibilityError& e) {
    std::cerr << "admissibility violation: " << e.what() << "\n";
    return kExitAdmissibility;
  } catch (const NotComparableError& e) {
    std::cerr << "not comparable: " << e.what() << "\n";
    return kExitAdmissibility;
  } catch (const DomainError& e) {
    std::cerr << "numerical domain: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
