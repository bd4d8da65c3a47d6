#ifndef FLOWFORGE_FLOWFORGE_HPP
#define FLOWFORGE_FLOWFORGE_HPP

// Umbrella header: the full motion-preprocessing toolkit.

#include "flowforge/core.hpp"
#include "flowforge/imaging.hpp"
#include "flowforge/denseflow.hpp"
#include "flowforge/geometry.hpp"
#include "flowforge/parallel.hpp"
#include "flowforge/compensation.hpp"
#include "flowforge/selection.hpp"
#include "flowforge/flowcodec.hpp"
#include "flowforge/trace.hpp"
#include "flowforge/sequenceids.hpp"
#include "flowforge/storage.hpp"

#endif
