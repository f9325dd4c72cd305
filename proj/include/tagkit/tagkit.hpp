#pragma once

// Umbrella header for the tagkit trigram part-of-speech tagging toolkit.

#include "tagkit/corpus.hpp"
#include "tagkit/counts.hpp"
#include "tagkit/decoder.hpp"
#include "tagkit/error.hpp"
#include "tagkit/eval.hpp"
#include "tagkit/model.hpp"
#include "tagkit/smoothing.hpp"
#include "tagkit/split.hpp"
#include "tagkit/tagset.hpp"
#include "tagkit/text.hpp"
#include "tagkit/version.hpp"
