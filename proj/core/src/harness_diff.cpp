#include <algorithm>
#include <atomic>
#include <exception>
#include <iterator>
#include <mutex>
#include <thread>

#include "interkernel/errors.hpp"
#include "interkernel/harness.hpp"
#include "interkernel/operational.hpp"

namespace interkernel {

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        for (std::size_t w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (std::size_t k = next++; k < n; k = next++) {
                    try {
                        fn(k);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

DiffOutcome diff_semantics(const Interaction& i, std::size_t bound, std::size_t trace_cap) {
    const TraceSet u = sigma_u(i, bound, trace_cap);
    const TraceSet o = sigma_o(i, bound, trace_cap);
    DiffOutcome out;
    out.interaction = i;
    out.bound = bound;
    std::set_difference(u.begin(), u.end(), o.begin(), o.end(), std::inserter(out.only_u, out.only_u.end()));
    std::set_difference(o.begin(), o.end(), u.begin(), u.end(), std::inserter(out.only_o, out.only_o.end()));
    out.equal = out.only_u.empty() && out.only_o.empty();
    return out;
}

BackToBackSummary back_to_back(const std::vector<Interaction>& terms, std::size_t bound, std::size_t jobs,
                               std::size_t trace_cap) {
    enum class Status { Equal, Different, Limited };
    std::vector<Status> status(terms.size(), Status::Equal);
    std::vector<DiffOutcome> outcomes(terms.size());
    parallel_for(terms.size(), jobs, [&](std::size_t k) {
        try {
            DiffOutcome d = diff_semantics(terms[k], bound, trace_cap);
            if (!d.equal) {
                status[k] = Status::Different;
                outcomes[k] = std::move(d);
            }
        } catch (const ResourceLimit&) {
            status[k] = Status::Limited;
        }
    });
    BackToBackSummary summary;
    summary.checked = terms.size();
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (status[k] == Status::Limited) ++summary.resource_limited;
        if (status[k] == Status::Different) summary.mismatches.push_back(std::move(outcomes[k]));
    }
    return summary;
}

}  // namespace interkernel
