// Wire types mirroring the service JSON. Field names match the payloads
// exactly; nothing here is derived client-side.

export interface SizeCategory {
  index: number;
  centroid_width_mm: number;
  centroid_height_mm: number;
  member_ids: string[];
  darkness: number;
}

export interface CollectionSummary {
  anthology_count: number;
  story_count: number;
  year_extent: [number, number];
  size_categories: SizeCategory[];
}

export interface Story {
  title: string;
  publication_year: number;
}

export interface PaletteEntry {
  lab: [number, number, number];
  srgb: string;
  proportion: number;
}

export interface AnthologyDetail {
  id: string;
  title: string;
  height_mm: number;
  width_mm: number;
  page_count: number;
  thickness_mm: number;
  cover_material: string;
  page_material: string;
  binding: string;
  cover_image: string;
  spine_image: string | null;
  stories: Story[];
  palette: PaletteEntry[];
  year_span: [number, number];
}

export interface ColorSampleWire {
  hue_deg: number;
  radius: number;
  tolerance_de: number;
  min_proportion: number;
  texture_ref?: string;
}

export interface FilterStateWire {
  color_samples: ColorSampleWire[];
  year_range: [number, number] | null;
  size_categories: number[];
}

export interface FilterResponse {
  ids: string[];
  avg_story_count: number;
  color_samples: ColorSampleWire[];
}

export interface TimelineSpan {
  min_year: number;
  max_year: number;
  color: string;
}

export interface TimelineData {
  /** year (as a string key) -> [anthology id, story index] pairs */
  years: Record<string, [string, number][]>;
  spans: Record<string, TimelineSpan>;
}

export type LayoutKind = "shelf" | "pile";

export interface PlacementWire {
  id: string;
  x_mm: number;
  y_mm: number;
  rotation_deg: number;
  z_order: number;
  pile_id: string | null;
}

export interface PileWire {
  anchor: [number, number];
  members: string[];
  label: string | null;
}

export interface LayoutState {
  kind: LayoutKind;
  seed: number;
  version: number;
  placements: PlacementWire[];
  piles: Record<string, PileWire>;
}

export interface SessionInfo {
  session_id: string;
  layout: LayoutState;
}

export interface LayoutParams {
  kind?: LayoutKind;
  group_by?: "color";
  n_piles?: number;
  filter?: FilterStateWire;
  shelf_width_mm?: number;
}

export interface MoveRequest {
  id: string;
  x_mm: number;
  y_mm: number;
  expected_version: number;
}
