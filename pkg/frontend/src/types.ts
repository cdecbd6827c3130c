// Payload shapes of the gateway JSON API.

export interface ExerciseSummary {
  id: string
  kind: 'prop' | 'fol'
  modes: string[]
}

export interface NotationProp {
  symbol: string
  gloss: string
}

export interface NotationPred {
  symbol: string
  arity: number
  gloss: string
}

export interface Notation {
  kind: 'prop' | 'fol'
  props?: NotationProp[]
  preds?: NotationPred[]
  consts?: NotationProp[]
}

export interface ExerciseDetail {
  id: string
  kind: 'prop' | 'fol'
  mode: 'formalize' | 'deformalize'
  notation: Notation
  sentence?: string // formalize mode only
  formula?: string // deformalize mode only
}

export interface ProofOutcome {
  result: 'valid' | 'proved' | 'countermodel' | 'unknown' | 'refuted-by-small-model'
  assignment?: Record<string, boolean>
  reason?: string
  model?: string
}

export interface Directional {
  forward: ProofOutcome
  backward: ProofOutcome
}

export interface VerdictPayload {
  kind: string
  unverified_directions?: string[]
}

export interface SimplicityPayload {
  value: number
  display_value: number
  band: 'low' | 'mid' | 'high'
  template_length: number
  input_length: number
}

export interface EchoPayload {
  status: 'formalized' | 'not-expressible' | 'backend-error'
  formula?: string
  raw?: string
  kind?: string
  detail?: string
}

export interface DeformalizationReport {
  echo: EchoPayload
  directional: Directional | null
  verdict: VerdictPayload | null
  simplicity: SimplicityPayload | null
  countermodels: Record<string, Record<string, boolean>>
  message: string
}

export interface FormalizationReport {
  parse_ok: boolean
  errors: { kind: string; position: number; message: string }[]
  directional: Directional | null
  verdict: VerdictPayload | null
  countermodels: Record<string, Record<string, boolean>>
  message: string
}

export interface ArgumentSummary {
  id: string
  premises: string[]
  goal_sentence: string
  notation: Notation
}

export interface ArgumentStepPayload {
  text: string
  kind: string | null
  formula: string | null
  status: 'verified' | 'not-entailed' | 'formalization-error' | 'unverified'
  fallacy_hint: string | null
  detail: string
}

export interface ArgumentReport {
  steps: ArgumentStepPayload[]
  goal_achieved: boolean
  open_assumptions: number
  message: string
}

export interface AttemptEntry {
  submitted: string
  verdict: string | null
  simplicity: number | null
  timestamp: number
}
