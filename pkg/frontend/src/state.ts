// Single source of truth for everything painted on screen. Widgets write
// intents here; the controller resolves them against the API and stores the
// responses. The canvas only ever shows ids from the last filter response,
// never a locally computed set.

import type {
  AnthologyDetail,
  CollectionSummary,
  FilterResponse,
  FilterStateWire,
  LayoutKind,
  LayoutState,
  SizeCategory,
  TimelineData,
} from "./types.js";
import type { ViewScale } from "./scale.js";

export interface HoverTarget {
  anthologyId: string;
  screenX: number;
  screenY: number;
}

export interface ViewState {
  mode: LayoutKind;
  scale: ViewScale;
  filter: FilterStateWire;
  /** last /api/filter response; null means "no filter active, show all" */
  filterResult: FilterResponse | null;
  layout: LayoutState | null;
  sessionId: string | null;
  hover: HoverTarget | null;
  collection: CollectionSummary | null;
  timeline: TimelineData | null;
  sizes: SizeCategory[];
  /** avg story count per size category index, from /api/filter */
  sizeAverages: Map<number, number>;
  anthologies: Map<string, AnthologyDetail>;
}

export function emptyFilter(): FilterStateWire {
  return { color_samples: [], year_range: null, size_categories: [] };
}

export function isEmptyFilter(f: FilterStateWire): boolean {
  return (
    f.color_samples.length === 0 &&
    f.year_range === null &&
    f.size_categories.length === 0
  );
}

type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState;
  private listeners: Listener[] = [];

  constructor(initial?: Partial<ViewState>) {
    this.state = {
      mode: "pile",
      scale: { pxPerMm: 1, viewportPx: 600, offsetX: 0, offsetY: 0 },
      filter: emptyFilter(),
      filterResult: null,
      layout: null,
      sessionId: null,
      hover: null,
      collection: null,
      timeline: null,
      sizes: [],
      sizeAverages: new Map(),
      anthologies: new Map(),
      ...initial,
    };
  }

  get(): ViewState {
    return this.state;
  }

  update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  /** Ids visible on the canvas: exactly the last API response's ids. */
  visibleIds(): string[] {
    const { filterResult, layout } = this.state;
    if (filterResult) return filterResult.ids;
    return layout ? layout.placements.map((p) => p.id) : [];
  }
}
