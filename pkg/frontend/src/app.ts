// Wiring: hash routing, fetch orchestration, one in-flight submission per
// exercise. All rendering is delegated to the pure builders in render.ts.

import {
  getExercise, listArguments, listExercises, submitArgument,
  submitDeformalization, submitFormalization,
} from './api.js'
import { AttemptHistory } from './history.js'
import { argumentEditor, exerciseView, feedbackPanel } from './render.js'
import type { ArgumentReport, ArgumentSummary } from './types.js'

const history = new AttemptHistory()
const pending = new Set<string>()

function container(): HTMLElement {
  return document.getElementById('app') as HTMLElement
}

function replace(node: HTMLElement): void {
  const root = container()
  root.innerHTML = ''
  root.appendChild(node)
}

function errorBanner(message: string, retry: () => void): HTMLElement {
  const banner = document.createElement('div')
  banner.className = 'error-banner'
  banner.textContent = message
  const button = document.createElement('button')
  button.textContent = 'Retry'
  button.addEventListener('click', retry)
  banner.appendChild(button)
  return banner
}

async function showIndex(): Promise<void> {
  try {
    const [exercises, argumentExercises] = await Promise.all(
      [listExercises(), listArguments()])
    const page = document.createElement('section')
    page.className = 'index'
    const heading = document.createElement('h1')
    heading.textContent = 'Logic exercises'
    page.appendChild(heading)
    const list = document.createElement('ul')
    for (const exercise of exercises) {
      for (const mode of exercise.modes) {
        const item = document.createElement('li')
        const link = document.createElement('a')
        link.href = `#/exercises/${exercise.id}/${mode}`
        link.textContent = `${exercise.id} (${mode}, ${exercise.kind})`
        item.appendChild(link)
        list.appendChild(item)
      }
    }
    for (const exercise of argumentExercises) {
      const item = document.createElement('li')
      const link = document.createElement('a')
      link.href = `#/arguments/${exercise.id}`
      link.textContent = `${exercise.id} (argument)`
      item.appendChild(link)
      list.appendChild(item)
    }
    page.appendChild(list)
    replace(page)
  } catch {
    replace(errorBanner('Could not reach the exercise service.', showIndex))
  }
}

async function showExercise(id: string,
                            mode: 'formalize' | 'deformalize'): Promise<void> {
  try {
    const exercise = await getExercise(id, mode)
    const view = exerciseView(exercise, history.for(`${id}/${mode}`))
    const form = view.querySelector('form') as HTMLFormElement
    const input = view.querySelector('textarea') as HTMLTextAreaElement
    const button = view.querySelector('button.submit') as HTMLButtonElement
    form.addEventListener('submit', async event => {
      event.preventDefault()
      const key = `${id}/${mode}`
      if (pending.has(key) || !input.value.trim()) return
      pending.add(key)
      button.disabled = true
      try {
        const report = mode === 'deformalize'
          ? await submitDeformalization(id, input.value)
          : await submitFormalization(id, input.value)
        history.record(key, {
          submitted: input.value,
          verdict: report.verdict?.kind ?? null,
          simplicity: 'simplicity' in report
            ? report.simplicity?.value ?? null : null,
          timestamp: Date.now(),
        })
        view.querySelector('.feedback')?.remove()
        view.appendChild(feedbackPanel(report))
      } catch (error) {
        const status = (error as { status?: number; body?: unknown })
        // 422 still carries a report for display
        const body = status.body as { report?: never } | null
        if (status.status === 422 && body && 'report' in body) {
          view.querySelector('.feedback')?.remove()
          view.appendChild(feedbackPanel((body as any).report))
        } else {
          view.appendChild(errorBanner('Submission failed.', () => form.requestSubmit()))
        }
      } finally {
        pending.delete(key)
        button.disabled = false
      }
    })
    replace(view)
  } catch (error) {
    const status = (error as { status?: number }).status
    if (status === 404) {
      const missing = document.createElement('p')
      missing.className = 'not-found'
      missing.textContent = `No exercise ${id}.`
      replace(missing)
    } else {
      replace(errorBanner('Could not load the exercise.',
        () => showExercise(id, mode)))
    }
  }
}

async function showArgument(id: string): Promise<void> {
  try {
    const all = await listArguments()
    const exercise = all.find(e => e.id === id)
    if (!exercise) {
      const missing = document.createElement('p')
      missing.className = 'not-found'
      missing.textContent = `No argument exercise ${id}.`
      replace(missing)
      return
    }
    renderArgument(exercise, [''], null)
  } catch {
    replace(errorBanner('Could not load the argument exercise.',
      () => showArgument(id)))
  }
}

function renderArgument(exercise: ArgumentSummary, steps: string[],
                        report: ArgumentReport | null): void {
  const view = argumentEditor(exercise, steps, report)

  const readSteps = (): string[] =>
    Array.from(view.querySelectorAll<HTMLInputElement>('.step-input'))
      .map(input => input.value)

  view.addEventListener('click', async event => {
    const target = event.target as HTMLElement
    const index = Number(target.dataset.index ?? -1)
    const current = readSteps()
    if (target.classList.contains('step-remove')) {
      current.splice(index, 1)
      renderArgument(exercise, current.length ? current : [''], null)
    } else if (target.classList.contains('step-move-up') && index > 0) {
      [current[index - 1], current[index]] = [current[index], current[index - 1]]
      renderArgument(exercise, current, null)
    } else if (target.classList.contains('step-move-down')
               && index < current.length - 1) {
      [current[index + 1], current[index]] = [current[index], current[index + 1]]
      renderArgument(exercise, current, null)
    } else if (target.classList.contains('step-add')) {
      renderArgument(exercise, [...current, ''], null)
    } else if (target.classList.contains('argument-submit')) {
      if (pending.has(exercise.id)) return
      pending.add(exercise.id)
      try {
        const submitted = current.filter(step => step.trim())
        const result = await submitArgument(exercise.id, submitted)
        renderArgument(exercise, submitted, result)
      } catch {
        view.appendChild(errorBanner('Submission failed.', () => undefined))
      } finally {
        pending.delete(exercise.id)
      }
    }
  })
  replace(view)
}

export function route(): void {
  const hash = window.location.hash
  const exercise = hash.match(/^#\/exercises\/([^/]+)\/(formalize|deformalize)$/)
  if (exercise) {
    void showExercise(decodeURIComponent(exercise[1]),
      exercise[2] as 'formalize' | 'deformalize')
    return
  }
  const argument = hash.match(/^#\/arguments\/([^/]+)$/)
  if (argument) {
    void showArgument(decodeURIComponent(argument[1]))
    return
  }
  void showIndex()
}

export function start(): void {
  window.addEventListener('hashchange', route)
  route()
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  start()
}
