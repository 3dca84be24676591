#include <fstream>
#include <functional>
#include <vector>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gtheta/cli.hpp"

namespace {

int write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return 2;
    }
    out << content;
    return 0;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int execute(const nlohmann::json& config) {
    gtheta::RunOutcome outcome = gtheta::run_command(config);
    std::string out_path = config.value("out", "");
    std::string format = config.value("format", "human");
    if (!out_path.empty()) {
        if (ends_with(out_path, ".csv") && outcome.trace_csv) {
            if (int rc = write_file(out_path, *outcome.trace_csv)) return rc;
        } else {
            if (int rc = write_file(out_path,
                                    gtheta::wrap_report(config, outcome.report).dump(2) + "\n")) {
                return rc;
            }
        }
    }
    if (format == "json") {
        std::cout << outcome.report.dump(2) << "\n";
    } else if (format == "csv" && outcome.trace_csv) {
        std::cout << *outcome.trace_csv;
    } else {
        std::cout << outcome.human;
    }
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification and solver laboratory for theta-parametric metric spaces"};
    app.require_subcommand(0, 1);

    long long seed = 42;
    std::string out_path, format = "human", config_path;
    app.add_option("--seed", seed, "seed for randomized verification");
    app.add_option("--out", out_path, "write the report (json) or trace (csv) here");
    app.add_option("--format", format, "stdout format: human | json | csv");
    app.add_option("--config", config_path, "run a JSON config file instead of flags");

    nlohmann::json params;
    std::string command;

    // actions verify
    auto* actions = app.add_subcommand("actions", "B-action catalog operations");
    auto* actions_verify = actions->add_subcommand("verify", "verify action axioms");
    std::string action_name, control_name;
    double theta3_k = 0.5, alpha = 0.0;
    long long trials = 10000, kmax = 2000;
    actions_verify->add_option("--action", action_name, "catalog action name")->required();
    auto* k_opt = actions_verify->add_option("--k", theta3_k, "parameter for theta3");
    actions_verify->add_option("--control", control_name, "also verify this control function");
    actions_verify->add_option("--alpha", alpha, "control slack constant");
    actions_verify->add_option("--trials", trials, "trial count");
    actions_verify->add_option("--kmax", kmax, "divergence search depth");
    actions_verify->callback([&] {
        command = "actions-verify";
        params = {{"action", action_name}, {"trials", trials}, {"kmax", kmax}};
        if (k_opt->count() > 0) params["k"] = theta3_k;
        if (!control_name.empty()) {
            params["control"] = control_name;
            params["alpha"] = alpha;
        }
    });

    // spaces list
    auto* spaces = app.add_subcommand("spaces", "space catalog operations");
    auto* spaces_list = spaces->add_subcommand("list", "list catalog spaces");
    spaces_list->callback([&] {
        command = "spaces-list";
        params = nlohmann::json::object();
    });

    // shared space flags (registered per subcommand)
    std::string space_name, variant;
    long long depth = -1, grid_n = -1;
    double exp_k = 1.0;
    bool extended = false;
    CLI::Option* exp_k_opt = nullptr;
    auto add_space_options = [&](CLI::App* cmd) {
        cmd->add_option("--space", space_name, "catalog space name")->required();
        cmd->add_option("--variant", variant, "seq_b_space variant (K83 | K4quarter)");
        cmd->add_option("--depth", depth, "truncation depth");
        exp_k_opt = cmd->add_option("--k", exp_k, "exp_max_space parameter");
        cmd->add_option("--n", grid_n, "sup_grid_space size");
        cmd->add_flag("--extended", extended, "extend the finite plane carrier");
    };
    auto space_block = [&]() {
        nlohmann::json block{{"space", space_name}};
        if (!variant.empty()) block["variant"] = variant;
        if (depth > 0) block["depth"] = depth;
        if (exp_k_opt && exp_k_opt->count() > 0) block["k"] = exp_k;
        if (grid_n > 0) block["n"] = grid_n;
        if (extended) block["extended"] = true;
        return block;
    };

    // verify
    auto* verify = app.add_subcommand("verify", "axiom verification for a space");
    std::string axioms = "gtheta";
    add_space_options(verify);
    verify->add_option("--axioms", axioms, "gtheta | parametric | theta");
    verify->add_option("--trials", trials, "trial count");
    verify->callback([&] {
        command = "verify";
        params = {{"space", space_block()}, {"axioms", axioms}, {"trials", trials}};
    });

    // topology ball / open-check
    auto* topology = app.add_subcommand("topology", "balls and open/closed set checks");
    std::string center;
    double radius = 1.0, t_value = 1.0;
    bool closed = false;
    auto* ball = topology->add_subcommand("ball", "enumerate ball members");
    add_space_options(ball);
    ball->add_option("--center", center, "ball center")->required();
    ball->add_option("--radius", radius, "ball radius")->required();
    ball->add_option("--t", t_value, "parameter value")->required();
    ball->add_flag("--closed", closed, "closed ball instead of open");
    ball->callback([&] {
        command = "topology-ball";
        params = {{"space", space_block()}, {"center", center}, {"radius", radius},
                  {"t", t_value}, {"closed", closed}};
    });
    auto* open_check =
        topology->add_subcommand("open-check", "is the ball's member set an open set?");
    add_space_options(open_check);
    open_check->add_option("--center", center, "ball center")->required();
    open_check->add_option("--radius", radius, "ball radius")->required();
    open_check->add_option("--t", t_value, "parameter value")->required();
    open_check->add_flag("--closed", closed, "use the closed ball's members");
    open_check->callback([&] {
        command = "topology-open-check";
        params = {{"space", space_block()}, {"center", center}, {"radius", radius},
                  {"t", t_value}, {"closed", closed}};
    });

    // seq check
    auto* seq = app.add_subcommand("seq", "sequence checks");
    auto* seq_check = seq->add_subcommand("check", "convergence / cauchy / unique / continuity");
    std::string sequence, check = "convergence", limit, limit2, probe;
    double eps = 1e-6;
    long long horizon = 1000;
    add_space_options(seq_check);
    seq_check->add_option("--sequence", sequence, "catalog sequence")->required();
    seq_check->add_option("--check", check, "which check to run");
    seq_check->add_option("--limit", limit, "candidate limit point");
    seq_check->add_option("--limit2", limit2, "second candidate limit (unique check)");
    seq_check->add_option("--probe", probe, "probe point (continuity check)");
    seq_check->add_option("--eps", eps, "tolerance");
    seq_check->add_option("--horizon", horizon, "sequence horizon");
    std::vector<double> t_grid;
    seq_check->add_option("--t-grid", t_grid, "parameter grid values");
    seq_check->callback([&] {
        command = "seq-check";
        params = {{"space", space_block()}, {"sequence", sequence}, {"check", check},
                  {"eps", eps}, {"horizon", horizon}};
        if (!limit.empty()) params["limit"] = limit;
        if (!limit2.empty()) params["limit2"] = limit2;
        if (!probe.empty()) params["probe"] = probe;
        if (!t_grid.empty()) params["t_grid"] = t_grid;
    });

    // fixed-point run (--variant names the contraction variant here, so the
    // space flags are registered individually)
    auto* fp = app.add_subcommand("fixed-point", "premise-gated contraction machinery");
    auto* fp_run = fp->add_subcommand("run", "verify the contraction and iterate");
    std::string map_name, variant_name = "general", premise = "x_Tx", start;
    double u = 0.875, tol = 1e-10;
    long long max_iter = 200;
    fp_run->add_option("--space", space_name, "catalog space name")->required();
    fp_run->add_option("--depth", depth, "truncation depth");
    fp_run->add_option("--n", grid_n, "sup_grid_space size");
    fp_run->add_flag("--extended", extended, "extend the finite plane carrier");
    fp_run->add_option("--map", map_name, "catalog self map")->required();
    fp_run->add_option("--start", start, "starting point")->required();
    fp_run->add_option("--u", u, "contraction coefficient");
    fp_run->add_option("--variant", variant_name, "general | banach | kannan");
    fp_run->add_option("--premise", premise, "premise form: x_Tx | x_Ty");
    fp_run->add_option("--tol", tol, "convergence tolerance");
    fp_run->add_option("--max-iter", max_iter, "iteration budget");
    fp_run->callback([&] {
        command = "fixed-point-run";
        params = {{"space", space_block()}, {"map", map_name}, {"start", start},
                  {"u", u}, {"variant", variant_name}, {"premise", premise},
                  {"tol", tol}, {"max_iter", max_iter}};
    });

    // fde solve
    auto* fde = app.add_subcommand("fde", "fractional boundary-value solver");
    auto* fde_solve = fde->add_subcommand("solve", "solve by contraction iteration");
    std::string g_spec;
    double eta = 1.5;
    long long n_nodes = 2000;
    fde_solve->add_option("--eta", eta, "fractional order in (1, 2]");
    fde_solve->add_option("--g", g_spec, "right-hand side, e.g. linear:lambda=0.2,c=tau")
        ->required();
    fde_solve->add_option("--n", n_nodes, "grid segments");
    fde_solve->add_option("--tol", tol, "Picard tolerance");
    fde_solve->add_option("--max-iter", max_iter, "iteration budget");
    fde_solve->callback([&] {
        command = "fde-solve";
        params = {{"eta", eta}, {"g", g_spec}, {"n", n_nodes}, {"tol", tol},
                  {"max_iter", max_iter}};
    });

    // repro all
    auto* repro = app.add_subcommand("repro", "reproduce the documented examples");
    auto* repro_all = repro->add_subcommand("all", "run every cataloged example");
    repro_all->callback([&] {
        command = "repro-all";
        params = nlohmann::json::object();
    });

    // let --seed/--out/--format/--config appear after any subcommand
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
        node->fallthrough(true);
        for (auto* sub : node->get_subcommands({})) enable_fallthrough(sub);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    nlohmann::json config;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read config file " << config_path << "\n";
            return 2;
        }
        try {
            config = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "config parse error: " << e.what() << "\n";
            return 2;
        }
        if (app.count("--seed") > 0) config["seed"] = seed;
        if (!out_path.empty()) config["out"] = out_path;
        if (format != "human") config["format"] = format;
    } else {
        if (command.empty()) {
            std::cerr << app.help();
            return 2;
        }
        config = {{"command", command}, {"seed", seed}, {"params", params}};
        if (!out_path.empty()) config["out"] = out_path;
        if (format != "human") config["format"] = format;
    }

    auto errors = gtheta::validate_config(config);
    if (!errors.empty()) {
        for (const auto& e : errors) std::cerr << "config error at " << e << "\n";
        return 2;
    }
    return execute(config);
}
