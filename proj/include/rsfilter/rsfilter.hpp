#ifndef RSFILTER_RSFILTER_HPP
#define RSFILTER_RSFILTER_HPP

#include <rsfilter/discrete.hpp>
#include <rsfilter/error.hpp>
#include <rsfilter/filter_spec.hpp>
#include <rsfilter/filters.hpp>
#include <rsfilter/grid.hpp>
#include <rsfilter/lineshapes.hpp>
#include <rsfilter/metrics.hpp>
#include <rsfilter/random.hpp>
#include <rsfilter/spectrum_io.hpp>

#endif // RSFILTER_RSFILTER_HPP
