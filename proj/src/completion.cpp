#include "tcomplete/completion.hpp"

#include <algorithm>
#include <chrono>

namespace tcomplete {

const char* to_string(Method m) {
    switch (m) {
    case Method::Tnn:
        return "tnn";
    case Method::Tl12:
        return "tl12";
    case Method::Tccur:
        return "tccur";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    if (name == "tnn")
        return Method::Tnn;
    if (name == "tl12")
        return Method::Tl12;
    if (name == "tccur")
        return Method::Tccur;
    throw InvalidArgument("unknown method '" + name + "' (expected tnn, tl12 or tccur)");
}

CompletionOutcome run_completion(Method method, const Tensor3d& y, const TubalMask& mask,
                                 const MethodSettings& settings, const Tensor3d* truth) {
    using Clock = std::chrono::steady_clock;
    CompletionOutcome out;
    const auto start = Clock::now();
    if (method == Method::Tccur) {
        auto result = tccur(y, mask, settings.icurc);
        out.time_s = std::chrono::duration<double>(Clock::now() - start).count();
        out.iters = *std::max_element(result.iters.begin(), result.iters.end());
        out.converged = std::all_of(result.converged.begin(), result.converged.end(),
                                    [](bool c) { return c; });
        out.estimate = std::move(result.estimate);
        out.slice_errors = std::move(result.error_history);
    } else {
        AdmmConfig cfg = settings.admm;
        cfg.regularizer = method == Method::Tnn ? Regularizer::Tnn : Regularizer::Tl12;
        auto state = solve_admm(y, mask, cfg, truth);
        out.time_s = std::chrono::duration<double>(Clock::now() - start).count();
        out.iters = state.iter;
        out.converged = state.converged;
        out.estimate = std::move(state.x);
        out.admm_history = std::move(state.history);
    }
    return out;
}

} // namespace tcomplete
